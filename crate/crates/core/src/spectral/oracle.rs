//! Closed-form spectrum of the pseudometric Laplacian for `G = z^μ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::hypergeom_terminating;

/// Secondary Gauss map in the normal form `G = z^μ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussMapZmu {
    mu: f64,
}

impl GaussMapZmu {
    pub fn new(mu: f64) -> Result<Self> {
        check_mu(mu)?;
        Ok(GaussMapZmu { mu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self, p: u32, q: u32) -> f64 {
        lambda_unchecked(p, q, self.mu)
    }
}

pub(crate) fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("μ = {mu} must be positive and finite")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub p: u32,
    pub q: u32,
    pub lambda: f64,
    pub multiplicity: u32,
}

impl EigenPair {
    pub fn new(p: u32, q: u32, mu: f64) -> Self {
        EigenPair { p, q, lambda: lambda_unchecked(p, q, mu), multiplicity: if q > 0 { 2 } else { 1 } }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Cos,
    Sin,
}

fn lambda_unchecked(p: u32, q: u32, mu: f64) -> f64 {
    let x = p as f64 + q as f64 / mu;
    x * (1.0 + x)
}

/// `λ_{p,q} = (p + q/μ)(1 + p + q/μ)`
pub fn lambda_pq(p: i64, q: i64, mu: f64) -> Result<f64> {
    if p < 0 || q < 0 {
        return Err(Error::Precondition(format!("(p, q) = ({p}, {q}) must be nonnegative")));
    }
    check_mu(mu)?;
    Ok(lambda_unchecked(p as u32, q as u32, mu))
}

/// `φ_{p,q}(t) = (1−t²)^{q/2μ} F(p + 2q/μ + 1, −p, q/μ + 1, (1−t)/2)` on `[−1, 1]`.
pub fn phi_pq(p: u32, q: u32, mu: f64, t: f64) -> Result<f64> {
    check_mu(mu)?;
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} outside [−1, 1]")));
    }
    let a = q as f64 / mu;
    let f = hypergeom_terminating(p as f64 + 2.0 * a + 1.0, p, a + 1.0, 0.5 * (1.0 - t))?;
    let pre = if q == 0 { 1.0 } else { (1.0 - t * t).powf(0.5 * a) };
    Ok(pre * f)
}

/// Radial profile `v_{p,q}` as a function of `s = ln r`; stable for large `|s|`.
pub fn radial_profile(p: u32, q: u32, mu: f64, s: f64) -> Result<f64> {
    check_mu(mu)?;
    let a = q as f64 / mu;
    // (1 − t)/2 = 1/(1 + e^{2μs}),  (1 − t²)^{a/2} = sech(μs)^a
    let x = 1.0 / (1.0 + (2.0 * mu * s).exp());
    let f = hypergeom_terminating(p as f64 + 2.0 * a + 1.0, p, a + 1.0, x)?;
    let pre = if q == 0 { 1.0 } else { (-a * log_cosh(mu * s)).exp() };
    Ok(pre * f)
}

fn log_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax + (-2.0 * ax).exp().ln_1p() - std::f64::consts::LN_2
}

/// `v_{p,q}(r)` with `v(r) = φ_{p,q}((r^{2μ}−1)/(r^{2μ}+1))`; `r = 0` is the
/// puncture, where the profile extends continuously.
pub fn radial_eigenfunction(p: u32, q: u32, mu: f64, r: f64) -> Result<f64> {
    check_mu(mu)?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Precondition(format!("r = {r} must be nonnegative")));
    }
    if r == 0.0 {
        return phi_pq(p, q, mu, -1.0);
    }
    radial_profile(p, q, mu, r.ln())
}

/// `v_{p,q}(r)·cos(qθ)` or `·sin(qθ)`.
pub fn eigenfunction(p: i64, q: i64, mu: f64, r: f64, theta: f64, parity: Parity) -> Result<f64> {
    lambda_pq(p, q, mu)?;
    if parity == Parity::Sin && q == 0 {
        return Err(Error::Precondition("the sine parity needs q > 0".into()));
    }
    let v = radial_eigenfunction(p as u32, q as u32, mu, r)?;
    let angle = q as f64 * theta;
    Ok(v * match parity {
        Parity::Cos => angle.cos(),
        Parity::Sin => angle.sin(),
    })
}

/// All `λ_{p,q} < bound`, sorted by eigenvalue then `(q, p)`.
pub fn enumerate_below(mu: f64, bound: f64) -> Result<Vec<EigenPair>> {
    check_mu(mu)?;
    let mut out = vec![];
    let mut q = 0u32;
    while lambda_unchecked(0, q, mu) < bound {
        let mut p = 0u32;
        while lambda_unchecked(p, q, mu) < bound {
            out.push(EigenPair::new(p, q, mu));
            p += 1;
        }
        q += 1;
    }
    out.sort_by(|a, b| a.lambda.total_cmp(&b.lambda).then(a.q.cmp(&b.q)).then(a.p.cmp(&b.p)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticIndex {
    pub mu: f64,
    pub ind_u: u32,
    pub nullity: u32,
    /// Eigenvalues below `2 + null_band`.
    pub eigen_list: Vec<EigenPair>,
}

/// Negative eigenvalues of `Δ̄ − 2` with multiplicity; nullity by exact equality.
pub fn analytic_index(mu: f64, null_band: f64) -> Result<AnalyticIndex> {
    check_mu(mu)?;
    let band = if null_band.is_finite() { null_band.max(0.0) } else { 0.0 };
    let mut eigen_list = enumerate_below(mu, 2.0 + band.max(1e-9))?;
    let ind_u = eigen_list.iter().filter(|e| e.lambda < 2.0).map(|e| e.multiplicity).sum();
    let nullity = eigen_list.iter().filter(|e| e.lambda == 2.0).map(|e| e.multiplicity).sum();
    eigen_list.retain(|e| e.lambda < 2.0 + band || e.lambda == 2.0);
    Ok(AnalyticIndex { mu, ind_u, nullity, eigen_list })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_pq(0, 0, 1.7).unwrap(), 0.0);
        assert_eq!(lambda_pq(1, 0, 0.3).unwrap(), 2.0);
        assert_eq!(lambda_pq(0, 1, 2.0).unwrap(), 0.75);
        assert_eq!(lambda_pq(-1, 0, 1.0).unwrap_err().category(), "precondition");
    }

    #[test]
    fn eigenfunction_examples() {
        for &(r, th) in &[(0.3, 0.1), (2.0, 1.0), (0.0, 0.0)] {
            assert_eq!(eigenfunction(0, 0, 1.3, r, th, Parity::Cos).unwrap(), 1.0);
        }
        for &r in &[0.2f64, 1.0, 3.5] {
            let mu: f64 = 0.7;
            let t = (r.powf(2.0 * mu) - 1.0) / (r.powf(2.0 * mu) + 1.0);
            assert!((radial_eigenfunction(1, 0, mu, r).unwrap() - t).abs() < 1e-14);
        }
        assert!((eigenfunction(0, 1, 1.0, 1.0, 0.0, Parity::Cos).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(radial_eigenfunction(0, 2, 1.5, 0.0).unwrap(), 0.0);
        assert!(eigenfunction(0, 0, 1.0, 1.0, 0.0, Parity::Sin).is_err());
    }

    #[test]
    fn analytic_index_examples() {
        let a = analytic_index(0.5, 1e-3).unwrap();
        assert_eq!((a.ind_u, a.nullity), (1, 1));
        assert_eq!(analytic_index(2.5, 1e-3).unwrap().ind_u, 5);
        let a = analytic_index(3.0, 1e-3).unwrap();
        assert_eq!((a.ind_u, a.nullity), (5, 3));
    }
}
