//! Regular ends: classification by the indicial equations of the frame,
//! leading-order frames and graph forms near the puncture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::{cplx, cpow, BranchedPoint, Cplx};
use crate::mat2::Mat2;

const INT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EndType {
    CatenoidCousin,
    Horosphere,
}

/// End with `G = z^μ Ĝ`, `Q/dG = z^ν ω̂ dz` and `Q = (q₋₂ z⁻² + …) dz²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndData {
    pub mu: f64,
    pub nu: f64,
    pub q_minus2: Cplx,
    pub ord_q: i64,
    pub m1: u32,
    pub m2: u32,
    pub m: u32,
    pub end_type: EndType,
    pub embedded: bool,
}

fn positive_integer(name: &str, x: Cplx) -> Result<u32> {
    let n = x.re.round();
    if x.im.abs() > INT_TOL || (x.re - n).abs() > INT_TOL || n < 1.0 {
        return Err(Error::IllDefinedEnd(format!(
            "{name} = {x} is not a positive integer (nearest integers {} and {})",
            x.re.floor(),
            x.re.ceil()
        )));
    }
    Ok(n as u32)
}

pub fn classify_end(mu: f64, nu: f64, q_minus2: Cplx) -> Result<EndData> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Precondition(format!("μ = {mu} must be positive")));
    }
    if !(nu <= -1.0 + 1e-9) {
        return Err(Error::Precondition(format!("ν = {nu} > −1: the end is not complete")));
    }
    let s = mu + nu;
    if (s - s.round()).abs() > 1e-9 {
        return Err(Error::IllDefinedEnd(format!("μ + ν = {s} is not an integer")));
    }
    let ord_q = s.round() as i64 - 1;
    if ord_q < -2 {
        return Err(Error::NotRegular(format!("ord(Q) = {ord_q} < −2")));
    }
    let (end_type, m1, m2) = if ord_q == -2 {
        if q_minus2.norm() == 0.0 {
            return Err(Error::IllDefinedEnd("ord(Q) = −2 needs q₋₂ ≠ 0".into()));
        }
        let m1 = ((nu + 1.0).powi(2) + q_minus2 * 4.0).sqrt();
        let m2 = ((2.0 * mu + nu + 1.0).powi(2) + q_minus2 * 4.0).sqrt();
        (EndType::CatenoidCousin, m1, m2)
    } else {
        if q_minus2.norm() > 1e-12 {
            return Err(Error::Precondition(format!("ord(Q) = {ord_q} ≥ −1 but q₋₂ = {q_minus2} ≠ 0")));
        }
        (EndType::Horosphere, cplx(-(nu + 1.0), 0.0), cplx(2.0 * mu + nu + 1.0, 0.0))
    };
    let m1 = positive_integer("m1", m1)?;
    let m2 = positive_integer("m2", m2)?;
    Ok(EndData { mu, nu, q_minus2, ord_q, m1, m2, m: m1, end_type, embedded: m1 == 1 })
}

/// Roots of `t² − (ν+1)t − q₋₂` and `t² − (2μ+ν+1)t − q₋₂`.
pub fn indicial_roots(end: &EndData) -> [[Cplx; 2]; 2] {
    let roots = |b: f64| {
        let d = (cplx(b * b, 0.0) + end.q_minus2 * 4.0).sqrt();
        [(d + b) * 0.5, (-d + b) * 0.5]
    };
    [roots(end.nu + 1.0), roots(2.0 * end.mu + end.nu + 1.0)]
}

/// Leading-order graph `(Re z^m, Im z^m, c|z|^{μ+m})` of the end after the
/// horizontal normalisation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticGraph {
    pub point: [f64; 3],
    /// `c`
    pub height_factor: f64,
    /// exponent `α` of the relative correction `1 + O(|z|^α)`
    pub correction_exponent: f64,
}

/// `(c₁, c₂)` of the leading form `(c₁ Re z^m, c₁ Im z^m, c₂|z|^{μ+m})` of
/// a catenoid-type end with the standard frame; `(1, 1)` for horosphere type.
pub fn unnormalized_constants(end: &EndData) -> Result<(f64, f64)> {
    match end.end_type {
        EndType::Horosphere => Ok((1.0, 1.0)),
        EndType::CatenoidCousin => {
            let (mu, m) = (end.mu, end.m as f64);
            if (mu - m).abs() < 1e-12 {
                return Err(Error::Degenerate(format!("catenoid-type end with μ = m = {m}")));
            }
            Ok(((mu + m) / (mu - m), 4.0 * mu * m / ((mu - m) * (mu - m))))
        }
    }
}

pub fn asymptotic_graph(end: &EndData, z: Cplx) -> Result<AsymptoticGraph> {
    let (c1, c2) = unnormalized_constants(end)?;
    let m = end.m as f64;
    let (exponent, correction) = match end.end_type {
        EndType::CatenoidCousin => (end.mu + m, 1f64.min(2.0 * end.mu)),
        EndType::Horosphere => (2.0 * m, 1.0),
    };
    // z ↦ c₁^{-1/m} z absorbs the horizontal factor
    let c = c2 / c1.abs().powf(exponent / m);
    let zm = z.powu(end.m);
    Ok(AsymptoticGraph {
        point: [zm.re, zm.im, c * z.norm().powf(exponent)],
        height_factor: c,
        correction_exponent: correction,
    })
}

/// Leading order of `F⁻¹` at the end.
pub fn frame_asymptote(end: &EndData, z: &BranchedPoint) -> Result<Mat2> {
    let (mu, m) = (end.mu, end.m as f64);
    match end.end_type {
        EndType::CatenoidCousin => {
            if (mu - m).abs() < 1e-12 {
                return Err(Error::Degenerate(format!("catenoid-type end with μ = m = {m}")));
            }
            let s = 1.0 / (mu * m).sqrt();
            let (a, b) = ((mu + m) / 2.0 * s, (mu - m) / 2.0 * s);
            Ok(Mat2::new(
                cpow(*z, (m - mu) / 2.0)? * a,
                cpow(*z, (mu + m) / 2.0)? * b,
                cpow(*z, (-mu - m) / 2.0)? * b,
                cpow(*z, (mu - m) / 2.0)? * a,
            ))
        }
        EndType::Horosphere => {
            let one = cplx(1.0, 0.0);
            Ok(Mat2::new(one, cplx(0.0, 0.0), cpow(*z, end.nu + 1.0)?, one))
        }
    }
}
