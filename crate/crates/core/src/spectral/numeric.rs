//! Numerical spectrum of the pseudometric Laplacian for `G = z^μ` by Fourier
//! separation: in `s = ln r` each mode solves `−v″ + q²v = λ·w(s)·v` with
//! `w(s) = μ² sech²(μs)` on `[−S, S]`.

use serde::{Deserialize, Serialize};

use super::eigen::TridiagPencil;
use super::oracle::{check_mu, lambda_pq};
use crate::error::{Error, Result};

/// Index threshold: negative eigenvalues of `Δ̄ − 2`.
pub const INDEX_THRESHOLD: f64 = 2.0;
const BOUND_MARGIN: f64 = 0.05;
const MAX_MODES: u32 = 100_000;

/// `w(s) = μ² sech²(μs)`, equal to `ρ(e^s)·e^{2s}`.
pub fn radial_weight(mu: f64, s: f64) -> f64 {
    let x = (mu * s).abs();
    // sech² x = 4e^{−2x}/(1 + e^{−2x})², overflow-free
    let e = (-2.0 * x).exp();
    mu * mu * 4.0 * e / ((1.0 + e) * (1.0 + e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// natural condition (`v′ = 0`) at `±S`
    Neumann,
    Dirichlet,
}

impl Boundary {
    /// Neumann for the rotationally symmetric mode, Dirichlet otherwise.
    pub fn default_for(q: u32) -> Self {
        if q == 0 {
            Boundary::Neumann
        } else {
            Boundary::Dirichlet
        }
    }
}

/// One Fourier mode discretised by linear finite elements with lumped mass
/// on `n` uniform nodes over `[−S, S]`.
#[derive(Clone, Debug)]
pub struct RadialProblem {
    pub q: u32,
    pub mu: f64,
    pub s_max: f64,
    pub n: usize,
    pub boundary: Boundary,
    pub pencil: TridiagPencil,
}

pub fn assemble_mode(q: u32, mu: f64, s_max: f64, n: usize, boundary: Boundary) -> Result<RadialProblem> {
    check_mu(mu)?;
    if n < 3 {
        return Err(Error::Precondition(format!("need at least 3 nodes, got {n}")));
    }
    if !(s_max > 0.0 && s_max.is_finite()) {
        return Err(Error::Precondition(format!("S = {s_max} must be positive")));
    }
    let h = 2.0 * s_max / (n - 1) as f64;
    let q2 = (q as f64).powi(2);
    let node = |i: usize| -s_max + i as f64 * h;
    let (lo, hi) = match boundary {
        Boundary::Neumann => (0, n - 1),
        Boundary::Dirichlet => (1, n - 2),
    };
    let mut diag = vec![];
    let mut mass = vec![];
    for i in lo..=hi {
        let end = i == 0 || i == n - 1;
        let share = if end { 0.5 } else { 1.0 };
        diag.push(if end { 1.0 / h } else { 2.0 / h } + q2 * h * share);
        mass.push(radial_weight(mu, node(i)) * h * share);
    }
    let off = vec![-1.0 / h; hi - lo];
    Ok(RadialProblem { q, mu, s_max, n, boundary, pencil: TridiagPencil::new(diag, off, mass)? })
}

impl RadialProblem {
    pub fn h(&self) -> f64 {
        2.0 * self.s_max / (self.n - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| -self.s_max + i as f64 * self.h()).collect()
    }

    pub fn count_below(&self, bound: f64) -> usize {
        self.pencil.count_below(bound)
    }

    pub fn eigenvalues_below(&self, bound: f64) -> Result<Vec<f64>> {
        (0..self.count_below(bound)).map(|k| self.pencil.eigenvalue(k)).collect()
    }

    /// `k`-th eigenpair; the vector holds all `n` nodal values (boundary
    /// zeros included for Dirichlet).
    pub fn eigenpair(&self, k: usize) -> Result<(f64, Vec<f64>)> {
        let lambda = self.pencil.eigenvalue(k)?;
        let v = self.pencil.eigenvector(lambda)?;
        let full = match self.boundary {
            Boundary::Neumann => v,
            Boundary::Dirichlet => std::iter::once(0.0).chain(v).chain(std::iter::once(0.0)).collect(),
        };
        Ok((lambda, full))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOptions {
    /// Eigenvalues up to `cutoff + null_band` are listed.
    pub cutoff: f64,
    pub tol: f64,
    pub null_band: f64,
    pub s_max: f64,
    pub n: usize,
    pub max_doublings: u32,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { cutoff: 2.0, tol: 1e-6, null_band: 1e-3, s_max: 12.0, n: 2400, max_doublings: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSpectrum {
    pub q: u32,
    pub multiplicity: u32,
    pub boundary: Boundary,
    pub s_max: f64,
    /// nodes on the finest level used
    pub n_final: usize,
    /// extrapolated eigenvalues, ascending
    pub eigenvalues: Vec<f64>,
    /// largest change between the last two extrapolations
    pub shift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub q: u32,
    pub rank: u32,
    pub lambda_numeric: f64,
    pub lambda_analytic: f64,
    pub abs_err: f64,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub mu: f64,
    pub options: SpectrumOptions,
    pub threshold: f64,
    pub modes: Vec<ModeSpectrum>,
    /// rows ordered by `(q, rank)`
    pub rows: Vec<SpectrumRow>,
    pub ind_u_numeric: u32,
    pub nullity_numeric: u32,
}

/// Smallest `S ≥ s_max` (by doubling) whose neglected weight tail is below `tol`.
fn truncation_length(mu: f64, s_max: f64, tol: f64) -> f64 {
    let mut s = s_max;
    while 4.0 * mu * (-2.0 * mu * s).exp() > tol && s < 1e6 {
        s *= 2.0;
    }
    s
}

fn solve_mode(q: u32, mu: f64, bound: f64, opts: &SpectrumOptions) -> Result<ModeSpectrum> {
    let boundary = Boundary::default_for(q);
    let s_max = truncation_length(mu, opts.s_max, opts.tol);
    let mut n = ((opts.n - 1) as f64 * s_max / opts.s_max).round() as usize + 1;
    let mut raw: Vec<Vec<f64>> = vec![];
    let mut extrapolated: Vec<Vec<f64>> = vec![];
    let mut shift = f64::INFINITY;
    for level in 0..=opts.max_doublings {
        if level > 0 {
            n = 2 * (n - 1) + 1;
        }
        let problem = assemble_mode(q, mu, s_max, n, boundary)?;
        raw.push(problem.eigenvalues_below(bound)?);
        if level == 0 {
            continue;
        }
        let (coarse, fine) = (&raw[raw.len() - 2], &raw[raw.len() - 1]);
        let k = coarse.len().min(fine.len());
        extrapolated.push((0..k).map(|j| (4.0 * fine[j] - coarse[j]) / 3.0).collect());
        if let [.., prev, last] = extrapolated.as_slice() {
            let k = prev.len().min(last.len());
            shift = (0..k).map(|j| (last[j] - prev[j]).abs()).fold(0.0, f64::max);
            if prev.len() != last.len() {
                // an eigenvalue crossed the solve bound; only matters if it is listed
                let listed = |v: &[f64]| v.iter().filter(|l| **l < bound - BOUND_MARGIN).count();
                if listed(prev) != listed(last) {
                    shift = f64::INFINITY;
                }
            }
            if shift < opts.tol {
                return Ok(ModeSpectrum {
                    q,
                    multiplicity: if q > 0 { 2 } else { 1 },
                    boundary,
                    s_max,
                    n_final: n,
                    eigenvalues: last.clone(),
                    shift,
                });
            }
        }
    }
    Err(Error::Tolerance(format!(
        "mode q={q}, μ={mu}: eigenvalue shift {shift:.3e} after {} doublings exceeds tol {:.3e} (S={s_max}, N={n})",
        opts.max_doublings, opts.tol
    )))
}

/// Eigenvalues of `Δ̄` for `G = z^μ` below `max(cutoff, 2) + null_band`,
/// with index and nullity counted against the threshold 2.
pub fn numeric_spectrum(mu: f64, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    check_mu(mu)?;
    if !(opts.tol > 0.0) || !(opts.null_band >= 0.0) || !opts.cutoff.is_finite() {
        return Err(Error::Precondition("tol must be positive, null_band nonnegative, cutoff finite".into()));
    }
    if opts.n < 3 || !(opts.s_max > 0.0) {
        return Err(Error::Precondition("grid needs N ≥ 3 and S > 0".into()));
    }
    let list_bound = opts.cutoff + opts.null_band;
    let bound = list_bound.max(INDEX_THRESHOLD + opts.null_band) + BOUND_MARGIN;
    let mut modes = vec![];
    for q in 0..MAX_MODES {
        let oracle_live = lambda_pq(0, q as i64, mu)? < bound;
        let mode = solve_mode(q, mu, bound, opts)?;
        let found = !mode.eigenvalues.is_empty();
        if found {
            modes.push(mode);
        }
        if !found && !oracle_live {
            break;
        }
    }
    let mut rows = vec![];
    let (mut ind, mut nullity) = (0, 0);
    for m in &modes {
        for (rank, &l) in m.eigenvalues.iter().enumerate() {
            if l < INDEX_THRESHOLD - opts.null_band {
                ind += m.multiplicity;
            } else if (l - INDEX_THRESHOLD).abs() <= opts.null_band {
                nullity += m.multiplicity;
            }
            if l <= list_bound {
                let analytic = lambda_pq(rank as i64, m.q as i64, mu)?;
                rows.push(SpectrumRow {
                    q: m.q,
                    rank: rank as u32,
                    lambda_numeric: l,
                    lambda_analytic: analytic,
                    abs_err: (l - analytic).abs(),
                    multiplicity: m.multiplicity,
                });
            }
        }
    }
    Ok(SpectrumReport {
        mu,
        options: *opts,
        threshold: INDEX_THRESHOLD,
        modes,
        rows,
        ind_u_numeric: ind,
        nullity_numeric: nullity,
    })
}
