use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::{BranchedPoint, Cplx, HoloFn};
use crate::quad;

/// First-order data of the surface metric and the pseudometric at a point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSample {
    pub z: Cplx,
    /// Conformal factor of ds² with respect to |dz|²; not determined by the
    /// formula where G' = 0.
    pub ds2_factor: Option<f64>,
    #[serde(rename = "K")]
    pub k: f64,
    pub q_coeff: Cplx,
    /// Conformal factor of the pseudometric −K ds².
    pub rho: f64,
    pub umbilic: bool,
}

/// Closed formulas from the values `G, G', g', f` at `z`.
pub fn metric_sample(z: Cplx, g_sec: Cplx, dg_sec: Cplx, f: Cplx, dg: Cplx) -> Result<MetricSample> {
    let q_coeff = -f * dg;
    if dg_sec.norm() == 0.0 {
        return Ok(MetricSample { z, ds2_factor: None, k: 0.0, q_coeff, rho: 0.0, umbilic: true });
    }
    if f.norm() == 0.0 || dg.norm() == 0.0 {
        return Err(Error::Precondition(format!("f or g' vanishes at {z}; curvature formula singular")));
    }
    let one_g = 1.0 + g_sec.norm_sqr();
    let rho = 4.0 * dg_sec.norm_sqr() / (one_g * one_g);
    let ds2_factor = one_g * one_g * (f * dg / dg_sec).norm_sqr();
    Ok(MetricSample { z, ds2_factor: Some(ds2_factor), k: -rho / ds2_factor, q_coeff, rho, umbilic: false })
}

/// Metric data of the surface with secondary Gauss map `G` built from `(f, g)`.
pub fn metric_and_curvature(g_sec: &HoloFn, g: &HoloFn, f: &HoloFn, at: &BranchedPoint) -> Result<MetricSample> {
    let (gs, dgs) = g_sec.eval(at)?;
    let (_, dg) = g.eval(at)?;
    let (fv, _) = f.eval(at)?;
    metric_sample(at.z, gs, dgs, fv, dg)
}

/// `4|G'|² / (1+|G|²)²`
pub fn pseudometric_factor(g_sec: &HoloFn, at: &BranchedPoint) -> Result<f64> {
    let (g, dg) = g_sec.eval(at)?;
    Ok(pseudometric_from_values(g, dg))
}

pub fn pseudometric_from_values(g: Cplx, dg: Cplx) -> f64 {
    let d = 1.0 + g.norm_sqr();
    4.0 * dg.norm_sqr() / (d * d)
}

/// Half-width `S` in `s = ln r` beyond which the pseudo-area of `z^μ` is below `tol`
/// (relative to the total).
pub fn log_radius_cutoff(mu: f64, tol: f64) -> f64 {
    // tail: 4πμ(1 − tanh μS) < 8πμ e^{−2μS}; keep it a hundredth of tol·4πμ
    (200.0 / tol).ln() / (2.0 * mu)
}

/// `∫_ℂ ρ dA` for `G = z^μ`, by adaptive quadrature in `(ln r, θ)`.
pub fn total_pseudo_area(mu: f64, quad_tol: f64) -> Result<f64> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Precondition(format!("μ = {mu} must be positive")));
    }
    let g = HoloFn::power(Cplx::new(1.0, 0.0), mu);
    let s_max = log_radius_cutoff(mu, quad_tol);
    let inner_tol = 0.1 * quad_tol;
    let v = quad::integrate(
        |theta| {
            let inner = quad::integrate(
                |s| {
                    let z = Cplx::from_polar(s.exp(), theta);
                    let p = BranchedPoint::from_continuous_arg(z, theta)?;
                    Ok([pseudometric_factor(&g, &p)? * (2.0 * s).exp()])
                },
                -s_max,
                s_max,
                0.0,
                inner_tol,
            )?;
            Ok(inner)
        },
        0.0,
        2.0 * std::f64::consts::PI,
        0.0,
        inner_tol,
    )?;
    Ok(v[0])
}

/// Samples of a function on the `(s, θ)` cylinder `[−S, S] × [0, 2π)`,
/// row-major in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    pub s_max: f64,
    pub ns: usize,
    pub ntheta: usize,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn sample(s_max: f64, ns: usize, ntheta: usize, mut u: impl FnMut(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(ns * ntheta);
        for i in 0..ns {
            let s = Self::s_at(s_max, ns, i);
            for k in 0..ntheta {
                values.push(u(s.exp(), Self::theta_at(ntheta, k)));
            }
        }
        GridFunction { s_max, ns, ntheta, values }
    }

    fn s_at(s_max: f64, ns: usize, i: usize) -> f64 {
        -s_max + 2.0 * s_max * i as f64 / (ns - 1) as f64
    }

    fn theta_at(ntheta: usize, k: usize) -> f64 {
        2.0 * std::f64::consts::PI * k as f64 / ntheta as f64
    }

    pub fn s(&self, i: usize) -> f64 {
        Self::s_at(self.s_max, self.ns, i)
    }

    pub fn ds(&self) -> f64 {
        2.0 * self.s_max / (self.ns - 1) as f64
    }

    pub fn dtheta(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.ntheta as f64
    }

    #[inline]
    pub fn at(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.ntheta + k]
    }

    /// Linear combination `Σ c_j u_j` of grids with equal shape.
    pub fn combine(parts: &[(&GridFunction, f64)]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Precondition("empty combination".into()))?.0;
        let mut values = vec![0.0; first.values.len()];
        for (g, c) in parts {
            if g.values.len() != values.len() || g.ns != first.ns || g.s_max != first.s_max {
                return Err(Error::Precondition("grid shapes differ".into()));
            }
            for (v, x) in values.iter_mut().zip(&g.values) {
                *v += c * x;
            }
        }
        Ok(GridFunction { values, ..*first })
    }

    /// Flat Dirichlet integral `∫(u_s² + u_θ²) ds dθ` (differences at cell midpoints).
    pub fn dirichlet(&self) -> f64 {
        let (ds, dt) = (self.ds(), self.dtheta());
        let mut acc = 0.0;
        for i in 0..self.ns {
            for k in 0..self.ntheta {
                let u = self.at(i, k);
                if i + 1 < self.ns {
                    let d = (self.at(i + 1, k) - u) / ds;
                    acc += d * d * ds * dt;
                }
                let w = if i == 0 || i + 1 == self.ns { 0.5 } else { 1.0 };
                let d = (self.at(i, (k + 1) % self.ntheta) - u) / dt;
                acc += w * d * d * ds * dt;
            }
        }
        acc
    }

    /// `∫ u²·w(s) ds dθ` (trapezoid in s, periodic trapezoid in θ).
    pub fn weighted_l2(&self, mut weight: impl FnMut(f64) -> f64) -> f64 {
        let (ds, dt) = (self.ds(), self.dtheta());
        let mut acc = 0.0;
        for i in 0..self.ns {
            let w = weight(self.s(i)) * if i == 0 || i + 1 == self.ns { 0.5 } else { 1.0 };
            let row: f64 = (0..self.ntheta).map(|k| self.at(i, k).powi(2)).sum();
            acc += w * row * ds * dt;
        }
        acc
    }
}

/// `(∫|∇u|² dÃ − 2∫u²ρ dÃ) / ∫u²ρ dÃ` for `G = z^μ`, with the flat reference
/// metric; in log-polar coordinates `ρ dÃ = μ² sech²(μs) ds dθ`.
pub fn rayleigh_quotient(u: &GridFunction, mu: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::Precondition(format!("μ = {mu} must be positive")));
    }
    if u.ns < 2 || u.ntheta < 1 {
        return Err(Error::Precondition("grid too small".into()));
    }
    let den = u.weighted_l2(|s| {
        let c = (mu * s).cosh();
        mu * mu / (c * c)
    });
    if !(den > 0.0) {
        return Err(Error::Degenerate("∫u²ρ dÃ vanishes".into()));
    }
    Ok((u.dirichlet() - 2.0 * den) / den)
}
