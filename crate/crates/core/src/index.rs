//! Index reports: the unconstrained index pins the index to an interval of
//! length one; vision numbers and small deformations of minimal surfaces
//! contribute lower bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::analytic_index;

/// Which argument produced a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// `Ind ≥ Ind_u − 1`
    UnconstrainedIndex,
    /// only the horosphere is stable
    StabilityExclusion,
    /// visible sets of a Killing field
    Vision,
    /// small deformation of a minimal surface
    Deformation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: u32,
    pub source: BoundSource,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexFlags {
    pub stable_excluded: bool,
    pub horosphere: bool,
    pub finite_total_curvature: bool,
    pub infinite_index: bool,
    /// a lower bound exceeded the unconstrained index
    pub inconsistent: bool,
    /// collapse the interval onto `Ind_u`
    pub addendum_mode: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    /// unconstrained index `Ind_u = Ind(Σ)`, when known
    pub ind_u: Option<u32>,
    /// `[lo, hi]`; `hi = None` when unbounded or unknown
    pub lo: u32,
    pub hi: Option<u32>,
    pub lower_bounds: Vec<LowerBound>,
    pub nullity: Option<u32>,
    pub flags: IndexFlags,
}

fn nonneg(name: &str, v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::Precondition(format!("{name} = {v} must be a nonnegative integer")))
}

/// Report from the unconstrained index: `Ind ∈ {Ind_u − 1, Ind_u}`.
pub fn index_interval(ind_sigma: i64, is_horosphere: bool) -> Result<IndexReport> {
    let ind = nonneg("ind_sigma", ind_sigma)?;
    let mut report = IndexReport {
        ind_u: Some(ind),
        lo: 0,
        hi: Some(ind),
        lower_bounds: vec![],
        nullity: None,
        flags: IndexFlags { finite_total_curvature: true, ..IndexFlags::default() },
    };
    if is_horosphere {
        report.ind_u = Some(0);
        report.hi = Some(0);
        report.flags.horosphere = true;
        return Ok(report);
    }
    report = report.with_lower_bound(ind.saturating_sub(1), BoundSource::UnconstrainedIndex);
    if ind == 1 {
        report.flags.stable_excluded = true;
        report = report.with_lower_bound(1, BoundSource::StabilityExclusion);
    }
    Ok(report)
}

/// Report carrying only lower bounds (finite total curvature, `Ind_u` unknown).
pub fn lower_bounds_only(bounds: &[LowerBound]) -> IndexReport {
    let mut report = IndexReport {
        ind_u: None,
        lo: 0,
        hi: None,
        lower_bounds: vec![],
        nullity: None,
        flags: IndexFlags { finite_total_curvature: true, ..IndexFlags::default() },
    };
    for b in bounds {
        report = report.with_lower_bound(b.value, b.source);
    }
    report
}

/// Infinite total curvature and infinite index.
pub fn infinite_index() -> IndexReport {
    IndexReport {
        ind_u: None,
        lo: 0,
        hi: None,
        lower_bounds: vec![],
        nullity: None,
        flags: IndexFlags { infinite_index: true, ..IndexFlags::default() },
    }
}

impl IndexReport {
    pub fn with_lower_bound(mut self, value: u32, source: BoundSource) -> Self {
        self.lower_bounds.push(LowerBound { value, source });
        self.recompute();
        self
    }

    pub fn with_nullity(mut self, nullity: u32) -> Self {
        self.nullity = Some(nullity);
        self
    }

    pub fn with_addendum_mode(mut self, on: bool) -> Self {
        self.flags.addendum_mode = on;
        self.recompute();
        self
    }

    fn recompute(&mut self) {
        let best = self.lower_bounds.iter().map(|b| b.value).max().unwrap_or(0);
        self.flags.inconsistent = false;
        self.lo = match self.hi {
            Some(hi) if best > hi => {
                self.flags.inconsistent = true;
                hi
            }
            _ => best,
        };
        if self.flags.addendum_mode {
            if let Some(hi) = self.hi {
                self.lo = hi;
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn contains(&self, ind: u32) -> bool {
        !self.flags.infinite_index && ind >= self.lo && self.hi.is_none_or(|hi| ind <= hi)
    }
}

/// `ṽ − 1` when some visible set is not counted, else `ṽ − 2`, at least 0.
pub fn vision_bound(v: i64, v_adj: i64) -> Result<u32> {
    let v = nonneg("v", v)?;
    let v_adj = nonneg("v_adj", v_adj)?;
    if v_adj > v {
        return Err(Error::Precondition(format!("adjusted vision number {v_adj} exceeds {v}")));
    }
    Ok(if v_adj != v { v_adj.saturating_sub(1) } else { v_adj.saturating_sub(2) })
}

/// `Ind(M₀) − 1` for small deformations of a minimal surface of index `Ind(M₀)`.
pub fn deformation_bound(ind_minimal: i64) -> Result<u32> {
    Ok(nonneg("ind_minimal", ind_minimal)?.saturating_sub(1))
}

/// Largest genus for which the minimal Costa surface index `2k + 3` is known.
pub const COSTA_INDEX_KNOWN_UP_TO: u32 = 37;

/// Surfaces with known index information.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CatalogEntry {
    Horosphere,
    CatenoidCousin {
        mu: f64,
    },
    /// `g = z^k`, winding order `2k + 1`
    EnneperCousin {
        k: u32,
    },
    DualEnneper,
    /// `G = z^m` on `ℂ \ {0}`
    UyPower {
        m: u32,
    },
    /// `G = az + b`, `Q = ac z⁻² dz²`
    UyLinear,
    Genus1CatenoidCousin,
    CostaCousin {
        k: u32,
        small_deformation: bool,
    },
    NNoidCousin {
        n: u32,
    },
    Genus1NNoidCousin {
        n: u32,
        small_deformation: bool,
    },
}

impl CatalogEntry {
    pub const NAMES: [&'static str; 10] = [
        "horosphere",
        "catenoid-cousin",
        "enneper-cousin",
        "dual-enneper",
        "uy-power",
        "uy-linear",
        "genus1-catenoid-cousin",
        "costa-cousin",
        "n-noid-cousin",
        "genus1-n-noid-cousin",
    ];

    /// Parse a catalog name with optional numeric parameters.
    pub fn from_name(name: &str, mu: Option<f64>, k: Option<u32>, n: Option<u32>, small: bool) -> Result<Self> {
        let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| Error::Precondition(format!("{name} needs --{flag}")));
        Ok(match name {
            "horosphere" => CatalogEntry::Horosphere,
            "catenoid-cousin" => CatalogEntry::CatenoidCousin {
                mu: mu.ok_or_else(|| Error::Precondition("catenoid-cousin needs --mu".into()))?,
            },
            "enneper-cousin" => CatalogEntry::EnneperCousin { k: k.unwrap_or(1) },
            "dual-enneper" => CatalogEntry::DualEnneper,
            "uy-power" => CatalogEntry::UyPower { m: need(n.or(k), "n")? },
            "uy-linear" | "uy-example" => CatalogEntry::UyLinear,
            "genus1-catenoid-cousin" => CatalogEntry::Genus1CatenoidCousin,
            "costa-cousin" => CatalogEntry::CostaCousin { k: need(k, "k")?, small_deformation: small },
            "n-noid-cousin" => CatalogEntry::NNoidCousin { n: need(n, "n")? },
            "genus1-n-noid-cousin" => CatalogEntry::Genus1NNoidCousin { n: need(n, "n")?, small_deformation: small },
            other => return Err(Error::UnknownExample(other.to_string())),
        })
    }
}

fn from_gauss_exponent(mu: f64) -> Result<IndexReport> {
    let a = analytic_index(mu, 0.0)?;
    Ok(index_interval(a.ind_u as i64, false)?.with_nullity(a.nullity))
}

/// Index information for a catalog surface.
pub fn catalog_lookup(entry: &CatalogEntry) -> Result<IndexReport> {
    match *entry {
        CatalogEntry::Horosphere => index_interval(0, true),
        CatalogEntry::CatenoidCousin { mu } => from_gauss_exponent(mu),
        CatalogEntry::EnneperCousin { k } => {
            if k == 0 {
                return Err(Error::Precondition("Enneper cousin needs k ≥ 1".into()));
            }
            from_gauss_exponent(k as f64)
        }
        CatalogEntry::DualEnneper => Ok(infinite_index()),
        CatalogEntry::UyPower { m } => {
            if m < 3 {
                return Err(Error::Precondition(format!("G = z^m needs m ≥ 3, got {m}")));
            }
            from_gauss_exponent(m as f64)
        }
        CatalogEntry::UyLinear => from_gauss_exponent(1.0),
        CatalogEntry::Genus1CatenoidCousin => {
            // rotation about the axis through both ends: v = ṽ ≥ 4
            Ok(lower_bounds_only(&[LowerBound { value: vision_bound(4, 4)?, source: BoundSource::Vision }]))
        }
        CatalogEntry::CostaCousin { k, small_deformation } => {
            if k == 0 {
                return Err(Error::Precondition("Costa cousin needs genus k ≥ 1".into()));
            }
            let v = 2 * k as i64 + 2;
            let mut bounds = vec![LowerBound { value: vision_bound(v, v)?, source: BoundSource::Vision }];
            if small_deformation && k <= COSTA_INDEX_KNOWN_UP_TO {
                bounds
                    .push(LowerBound { value: deformation_bound(2 * k as i64 + 3)?, source: BoundSource::Deformation });
            }
            Ok(lower_bounds_only(&bounds))
        }
        CatalogEntry::NNoidCousin { n } => {
            if n < 2 {
                return Err(Error::Precondition("an n-noid needs n ≥ 2".into()));
            }
            // minimal genus-0 n-noid has index 2n − 3
            Ok(lower_bounds_only(&[LowerBound {
                value: deformation_bound(2 * n as i64 - 3)?,
                source: BoundSource::Deformation,
            }]))
        }
        CatalogEntry::Genus1NNoidCousin { n, small_deformation } => {
            if n < 3 {
                return Err(Error::Precondition("a genus-1 n-noid needs n ≥ 3".into()));
            }
            let mut bounds = vec![];
            if small_deformation {
                // translation fixing two adjacent end points: ṽ = n − 2 (n even), n − 3 (n odd), ṽ < v
                let v_adj = if n % 2 == 0 { n - 2 } else { n - 3 } as i64;
                bounds.push(LowerBound { value: vision_bound(v_adj + 1, v_adj)?, source: BoundSource::Vision });
                // minimal genus-1 n-noid has index ≥ n − 1
                bounds.push(LowerBound { value: deformation_bound(n as i64 - 1)?, source: BoundSource::Deformation });
            }
            Ok(lower_bounds_only(&bounds))
        }
    }
}
