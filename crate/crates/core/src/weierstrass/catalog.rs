//! Catalogue of explicit data with closed-form frames.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{mesh_generate, EndHints, Facing, GridSpec, IdealPoint, SurfaceMesh};
use crate::holo::{cplx, cpow, BranchedPoint, Cplx, HoloFn};
use crate::mat2::Mat2;

use super::{Convention, WeierstrassData};

fn one() -> Cplx {
    cplx(1.0, 0.0)
}

/// `f = 1, g = 1`: the horosphere.
pub fn horosphere() -> WeierstrassData {
    WeierstrassData::new(HoloFn::Const(one()), HoloFn::Const(one()), 1.0, cplx(0.0, 0.0), vec![])
        .expect("valid horosphere data")
}

/// `F = [[1+z, −z], [z, 1−z]]`
pub fn horosphere_frame(z: Cplx) -> Mat2 {
    Mat2::new(one() + z, -z, z, one() - z)
}

/// Isometry placing the horosphere on the plane `x3 = 1`, with `z ↦ 1 + 2z`.
pub fn horosphere_placement() -> Mat2 {
    let s = std::f64::consts::SQRT_2;
    Mat2::new(cplx(0.0, 0.0), cplx(s, 0.0), cplx(-1.0 / s, 0.0), cplx(1.0 / s, 0.0))
}

/// `f = 1, g = z^k`, surface `F·F*`: Enneper cousin of winding order `2k+1`.
pub fn enneper_cousin(k: u32) -> Result<WeierstrassData> {
    if k == 0 {
        return Err(Error::Precondition("Enneper cousin needs k ≥ 1".into()));
    }
    Ok(WeierstrassData::new(HoloFn::Const(one()), HoloFn::monomial(one(), k as i32), 1.0, cplx(0.0, 0.0), vec![])?
        .with_convention(Convention::DirectFrame))
}

/// Same data, surface `F⁻¹·(F⁻¹)*`: the dual Enneper cousin.
pub fn dual_enneper() -> WeierstrassData {
    WeierstrassData::new(HoloFn::Const(one()), HoloFn::monomial(one(), 1), 1.0, cplx(0.0, 0.0), vec![])
        .expect("valid Enneper data")
}

/// `F = [[cosh z, sinh z − z cosh z], [sinh z, cosh z − z sinh z]]` for `g = z`.
pub fn enneper_frame(z: Cplx) -> Mat2 {
    let (ch, sh) = (z.cosh(), z.sinh());
    Mat2::new(ch, sh - z * ch, sh, ch - z * sh)
}

/// Catenoid cousin with secondary Gauss map `z^μ`, given by `G = z^μ` and
/// `ω = (1−μ²)/(4μ)·z^(−μ−1)` on `ℂ \ {0}` with basepoint 1. The placement
/// puts the end at 0 over the origin of the upper half-space, symmetric
/// about the `x3` axis.
pub fn catenoid_cousin(mu: f64) -> Result<WeierstrassData> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Precondition(format!("μ = {mu} must be positive")));
    }
    if (mu - 1.0).abs() < 1e-12 {
        return Err(Error::Degenerate("catenoid cousin degenerates at μ = 1".into()));
    }
    let k = (1.0 - mu * mu) / (4.0 * mu);
    Ok(WeierstrassData::new(
        HoloFn::power(cplx(k, 0.0), -mu - 1.0),
        HoloFn::power(one(), mu),
        1.0,
        one(),
        vec![cplx(0.0, 0.0)],
    )?
    .with_convention(Convention::DirectFrame)
    .with_placement(catenoid_cousin_frame(mu, &BranchedPoint { z: one(), winding: 0 })?))
}

/// Closed-form surface matrix of the catenoid cousin (determinant 1,
/// hyperbolic Gauss map `z`).
pub fn catenoid_cousin_frame(mu: f64, p: &BranchedPoint) -> Result<Mat2> {
    let s = 1.0 / mu.sqrt();
    let a = (mu + 1.0) / 2.0 * s;
    let b = (mu - 1.0) / 2.0 * s;
    Ok(Mat2::new(
        cpow(*p, (1.0 - mu) / 2.0)? * a,
        cpow(*p, (1.0 + mu) / 2.0)? * b,
        cpow(*p, (-mu - 1.0) / 2.0)? * b,
        cpow(*p, (mu - 1.0) / 2.0)? * a,
    ))
}

/// Monodromy of the catenoid cousin's Bryant frame around the end at 0.
pub fn catenoid_cousin_monodromy(mu: f64) -> Mat2 {
    let e = Cplx::new(0.0, std::f64::consts::PI * mu).exp();
    Mat2::diag(-e, -e.conj())
}

/// Example with `G = z`, `ω = 2z⁻²` (parameters ℓ = 1, a = 1, c = 2, b = 0):
/// an end at 0 of catenoid type with winding `m = 3`.
pub fn uy_example() -> WeierstrassData {
    WeierstrassData::new(
        HoloFn::monomial(cplx(2.0, 0.0), -2),
        HoloFn::monomial(one(), 1),
        1.0,
        one(),
        vec![cplx(0.0, 0.0)],
    )
    .expect("valid data")
    .with_convention(Convention::DirectFrame)
    .with_placement(uy_frame(one()))
}

/// `(1/√3)·[[2z, −z²], [−z⁻², 2z⁻¹]]`
pub fn uy_frame(z: Cplx) -> Mat2 {
    let s = 1.0 / 3f64.sqrt();
    Mat2::new(z * 2.0, -z * z, -one() / (z * z), cplx(2.0, 0.0) / z).scale_re(s)
}

/// Named catalogue entries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Example {
    Horosphere,
    EnneperCousin { k: u32 },
    DualEnneper,
    CatenoidCousin { mu: f64 },
    UyExample,
}

impl Example {
    pub const NAMES: [&'static str; 5] =
        ["horosphere", "enneper-cousin", "dual-enneper", "catenoid-cousin", "uy-example"];

    pub fn from_name(name: &str, mu: Option<f64>, k: Option<u32>) -> Result<Self> {
        Ok(match name {
            "horosphere" => Example::Horosphere,
            "enneper-cousin" => Example::EnneperCousin { k: k.unwrap_or(1) },
            "dual-enneper" => Example::DualEnneper,
            "catenoid-cousin" => Example::CatenoidCousin {
                mu: mu.ok_or_else(|| Error::Precondition("catenoid-cousin needs --mu".into()))?,
            },
            "uy-example" => Example::UyExample,
            other => return Err(Error::UnknownExample(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Example::Horosphere => "horosphere",
            Example::EnneperCousin { .. } => "enneper-cousin",
            Example::DualEnneper => "dual-enneper",
            Example::CatenoidCousin { .. } => "catenoid-cousin",
            Example::UyExample => "uy-example",
        }
    }

    pub fn data(&self) -> Result<WeierstrassData> {
        match *self {
            Example::Horosphere => Ok(horosphere().with_placement(horosphere_placement())),
            Example::EnneperCousin { k } => enneper_cousin(k),
            Example::DualEnneper => Ok(dual_enneper()),
            Example::CatenoidCousin { mu } => catenoid_cousin(mu),
            Example::UyExample => Ok(uy_example()),
        }
    }

    /// Exponent μ of the normal form `G = z^μ` of the secondary Gauss map on
    /// the compactified surface, if it has one.
    pub fn gauss_exponent(&self) -> Option<f64> {
        match *self {
            Example::Horosphere | Example::DualEnneper => None,
            Example::EnneperCousin { k } => Some(k as f64),
            Example::CatenoidCousin { mu } => Some(mu),
            Example::UyExample => Some(1.0),
        }
    }

    /// What the boundary loops of a grid face: only full annuli around the
    /// origin have rings facing known ends.
    pub fn end_hints(&self, grid: &GridSpec) -> EndHints {
        let full_annulus = matches!(grid, GridSpec::Annulus { theta: None, .. });
        let end0 = Facing::End { ideal: IdealPoint::Finite([0.0, 0.0]) };
        let end_inf = Facing::End { ideal: IdealPoint::Infinity };
        match self {
            Example::Horosphere => EndHints { inner: Facing::Unknown, outer: end_inf },
            Example::EnneperCousin { .. } | Example::DualEnneper => {
                EndHints { inner: Facing::Unknown, outer: Facing::EndUnknownLimit }
            }
            Example::CatenoidCousin { .. } | Example::UyExample if full_annulus => {
                EndHints { inner: end0, outer: end_inf }
            }
            _ => EndHints::default(),
        }
    }

    pub fn mesh(&self, grid: &GridSpec) -> Result<SurfaceMesh> {
        mesh_generate(&self.data()?, grid, &self.end_hints(grid))
    }
}
