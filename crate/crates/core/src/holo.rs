//! Complex-analytic foundation: branch-tracked powers, paths in the punctured
//! plane, evaluable holomorphic data and terminating hypergeometric series.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::Mat2;

pub type Cplx = Complex64;

#[inline]
pub fn cplx(re: f64, im: f64) -> Cplx {
    Cplx::new(re, im)
}

pub(crate) fn check_finite(z: Cplx, what: &str) -> Result<Cplx> {
    if z.is_finite() {
        Ok(z)
    } else {
        Err(Error::Domain(format!("{what} is not finite: {z}")))
    }
}

/// A point of the punctured plane together with the number of signed turns
/// around the origin made by the path that reached it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchedPoint {
    pub z: Cplx,
    pub winding: i64,
}

impl BranchedPoint {
    pub fn new(z: Cplx, winding: i64) -> Result<Self> {
        check_finite(z, "branched point")?;
        if z == Cplx::new(0.0, 0.0) {
            return Err(Error::Domain("branched point at the puncture z = 0".into()));
        }
        Ok(BranchedPoint { z, winding })
    }

    /// Winding 0, principal sheet.
    pub fn principal(z: Cplx) -> Result<Self> {
        Self::new(z, 0)
    }

    /// Build from a continuous argument `theta` (any real), recovering the
    /// winding relative to the principal branch.
    pub fn from_continuous_arg(z: Cplx, theta: f64) -> Result<Self> {
        let winding = ((theta - z.arg()) / (2.0 * PI)).round() as i64;
        Self::new(z, winding)
    }

    /// The continuous argument Arg z + 2π·winding.
    pub fn continuous_arg(&self) -> f64 {
        self.z.arg() + 2.0 * PI * self.winding as f64
    }
}

/// `exp(μ·(ln|z| + i(Arg z + 2π·winding)))`.
pub fn cpow(p: BranchedPoint, mu: f64) -> Result<Cplx> {
    if p.z == Cplx::new(0.0, 0.0) {
        return Err(Error::Domain("cpow at the puncture z = 0".into()));
    }
    let log = Cplx::new(p.z.norm().ln(), p.continuous_arg());
    Ok((log * mu).exp())
}

/// Polyline in the punctured plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Path {
    points: Vec<Cplx>,
    closed: bool,
}

/// Largest angle a single path step may subtend around the origin.
const MAX_STEP_ANGLE: f64 = PI / 4.0;

impl Path {
    /// Validates finiteness, distinct consecutive points and closure.
    pub fn new(points: Vec<Cplx>, closed: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("path has no points".into()));
        }
        for &z in &points {
            check_finite(z, "path sample")?;
        }
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("consecutive path samples coincide".into()));
        }
        if closed {
            if points.len() < 3 {
                return Err(Error::Precondition("closed path needs at least 3 samples".into()));
            }
            let first = points[0];
            let last = *points.last().unwrap();
            if (first - last).norm() > 1e-12 * (1.0 + first.norm()) {
                return Err(Error::Precondition("closed path does not return to its start".into()));
            }
        }
        Ok(Path { points, closed })
    }

    /// The trivial path that stays at `z`.
    pub fn point(z: Cplx) -> Self {
        Path { points: vec![z], closed: false }
    }

    pub fn segment(a: Cplx, b: Cplx) -> Result<Self> {
        if a == b {
            return Ok(Path::point(a));
        }
        Path::new(vec![a, b], false)
    }

    pub fn polyline(points: &[Cplx]) -> Result<Self> {
        let mut pts: Vec<Cplx> = Vec::with_capacity(points.len());
        for &p in points {
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        Path::new(pts, false)
    }

    /// Counter-clockwise circle of the given radius starting at angle `start`,
    /// sampled at `n` points (plus the closing point).
    pub fn circle(center: Cplx, radius: f64, start: f64, n: usize) -> Result<Self> {
        if n < 3 || radius <= 0.0 {
            return Err(Error::Precondition("circle needs n >= 3 and radius > 0".into()));
        }
        let mut pts: Vec<Cplx> =
            (0..n).map(|k| center + Cplx::from_polar(radius, start + 2.0 * PI * k as f64 / n as f64)).collect();
        pts.push(pts[0]);
        Path::new(pts, true)
    }

    /// Loop from `base` out to a circle around `center`, once around it, and back.
    pub fn loop_around(base: Cplx, center: Cplx, radius: f64, n: usize) -> Result<Self> {
        let start = (base - center).arg();
        let on_circle = center + Cplx::from_polar(radius, start);
        let mut pts = vec![base];
        if on_circle != base {
            pts.push(on_circle);
        }
        for k in 1..n {
            pts.push(center + Cplx::from_polar(radius, start + 2.0 * PI * k as f64 / n as f64));
        }
        pts.push(on_circle);
        if on_circle != base {
            pts.push(base);
        }
        Path::new(pts, true)
    }

    pub fn points(&self) -> &[Cplx] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn start(&self) -> Cplx {
        self.points[0]
    }

    pub fn end(&self) -> Cplx {
        *self.points.last().unwrap()
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }

    /// Reject sample points or segments passing through a puncture.
    pub fn check_avoids(&self, punctures: &[Cplx]) -> Result<()> {
        for &p in punctures {
            for w in self.points.windows(2) {
                if segment_distance(w[0], w[1], p) < 1e-12 {
                    return Err(Error::Precondition(format!("path passes through puncture {p}")));
                }
            }
            if self.points.len() == 1 && (self.points[0] - p).norm() < 1e-12 {
                return Err(Error::Precondition(format!("path sits on puncture {p}")));
            }
        }
        Ok(())
    }

    /// Insert samples so that every step subtends less than π/4 around each
    /// of the given centres, which makes winding bookkeeping unambiguous.
    pub fn refined_about(&self, centers: &[Cplx]) -> Result<Self> {
        self.check_avoids(centers)?;
        let mut out = vec![self.points[0]];
        for w in self.points.windows(2) {
            subdivide(w[0], w[1], centers, &mut out, 0);
        }
        Ok(Path { points: out, closed: self.closed })
    }

    /// Continuous arguments of the samples around the origin, starting from
    /// the given winding. Each step must subtend less than π.
    pub fn branched_points(&self, start_winding: i64) -> Result<Vec<BranchedPoint>> {
        let first = BranchedPoint::new(self.points[0], start_winding)?;
        let mut theta = first.continuous_arg();
        let mut out = vec![first];
        for w in self.points.windows(2) {
            let step = (w[1] / w[0]).arg();
            if step.abs() >= PI - 1e-12 {
                return Err(Error::Precondition("path step subtends π around the origin; refine the path".into()));
            }
            theta += step;
            out.push(BranchedPoint::from_continuous_arg(w[1], theta)?);
        }
        Ok(out)
    }
}

fn subdivide(a: Cplx, b: Cplx, centers: &[Cplx], out: &mut Vec<Cplx>, depth: u32) {
    let too_wide = centers.iter().any(|&c| ((b - c) / (a - c)).arg().abs() > MAX_STEP_ANGLE);
    if too_wide && depth < 60 {
        let m = (a + b) * 0.5;
        subdivide(a, m, centers, out, depth + 1);
        subdivide(m, b, centers, out, depth + 1);
    } else {
        out.push(b);
    }
}

fn segment_distance(a: Cplx, b: Cplx, p: Cplx) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (a + ab * t - p).norm()
}

/// Holomorphic (possibly branched) function with an analytic derivative.
///
/// Branched variants are evaluated on the sheet selected by the winding of
/// the [`BranchedPoint`]; single-valued variants ignore the winding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum HoloFn {
    Const(Cplx),
    /// `Σ c_k z^k`
    Poly(Vec<Cplx>),
    /// `Σ c_k z^(lowest + k)`
    Laurent {
        lowest: i32,
        coeffs: Vec<Cplx>,
    },
    /// `coef · z^mu` on the tracked sheet.
    Power {
        coef: Cplx,
        mu: f64,
    },
    Tanh,
    /// `(a h + b) / (c h + d)` for an SL(2,C) matrix and inner function `h`.
    Mobius {
        matrix: Mat2,
        inner: Box<HoloFn>,
    },
}

impl HoloFn {
    pub fn constant(c: Cplx) -> Self {
        HoloFn::Const(c)
    }

    /// `z^k` for integer `k` (single valued).
    pub fn monomial(coef: Cplx, k: i32) -> Self {
        HoloFn::Laurent { lowest: k, coeffs: vec![coef] }
    }

    pub fn power(coef: Cplx, mu: f64) -> Self {
        HoloFn::Power { coef, mu }
    }

    pub fn mobius(matrix: Mat2, inner: HoloFn) -> Self {
        HoloFn::Mobius { matrix, inner: Box::new(inner) }
    }

    pub fn is_branched(&self) -> bool {
        match self {
            HoloFn::Power { mu, .. } => mu.fract() != 0.0,
            HoloFn::Mobius { inner, .. } => inner.is_branched(),
            _ => false,
        }
    }

    /// Value and derivative at a point of the tracked sheet.
    pub fn eval(&self, p: &BranchedPoint) -> Result<(Cplx, Cplx)> {
        let z = p.z;
        let zero = Cplx::new(0.0, 0.0);
        let out = match self {
            HoloFn::Const(c) => (*c, zero),
            HoloFn::Poly(cs) => {
                let mut v = zero;
                let mut d = zero;
                for &c in cs.iter().rev() {
                    d = d * z + v;
                    v = v * z + c;
                }
                (v, d)
            }
            HoloFn::Laurent { lowest, coeffs } => {
                let mut v = zero;
                let mut d = zero;
                for (k, &c) in coeffs.iter().enumerate() {
                    let n = lowest + k as i32;
                    if n == 0 {
                        v += c;
                        continue;
                    }
                    v += c * z.powi(n);
                    d += c * (n as f64) * z.powi(n - 1);
                }
                (v, d)
            }
            HoloFn::Power { coef, mu } => {
                let v = *coef * cpow(*p, *mu)?;
                let d = *coef * *mu * cpow(*p, mu - 1.0)?;
                (v, d)
            }
            HoloFn::Tanh => {
                let t = z.tanh();
                (t, Cplx::new(1.0, 0.0) - t * t)
            }
            HoloFn::Mobius { matrix, inner } => {
                let (h, dh) = inner.eval(p)?;
                let [[a, b], [c, d]] = matrix.0;
                let den = c * h + d;
                if den.norm() == 0.0 {
                    return Err(Error::Domain("Möbius image at infinity".into()));
                }
                ((a * h + b) / den, dh * matrix.det() / (den * den))
            }
        };
        if !(out.0.is_finite() && out.1.is_finite()) {
            return Err(Error::Domain(format!("non-finite value of holomorphic data at {z}")));
        }
        Ok(out)
    }

    /// Evaluate on the principal sheet.
    pub fn eval_at(&self, z: Cplx) -> Result<(Cplx, Cplx)> {
        match self {
            // single-valued variants are defined at z = 0
            HoloFn::Const(_) | HoloFn::Poly(_) | HoloFn::Tanh => self.eval(&BranchedPoint { z, winding: 0 }),
            _ => self.eval(&BranchedPoint::principal(z)?),
        }
    }

    pub fn value(&self, p: &BranchedPoint) -> Result<Cplx> {
        Ok(self.eval(p)?.0)
    }

    /// Order of the zero (positive) or pole (negative) at the origin, when
    /// it can be read off the representation.
    pub fn order_at_origin(&self) -> Option<f64> {
        match self {
            HoloFn::Const(c) => Some(if c.norm() == 0.0 { f64::INFINITY } else { 0.0 }),
            HoloFn::Poly(cs) => cs.iter().position(|c| c.norm() != 0.0).map(|k| k as f64).or(Some(f64::INFINITY)),
            HoloFn::Laurent { lowest, coeffs } => {
                coeffs.iter().position(|c| c.norm() != 0.0).map(|k| (*lowest + k as i32) as f64)
            }
            HoloFn::Power { coef, mu } => (coef.norm() != 0.0).then_some(*mu),
            HoloFn::Tanh => Some(1.0),
            HoloFn::Mobius { .. } => None,
        }
    }
}

/// Rising factorial `(α)_i`, with `(α)_0 = 1`.
pub fn pochhammer(alpha: f64, i: u32) -> f64 {
    (0..i).fold(1.0, |acc, k| acc * (alpha + k as f64))
}

/// `Σ_{i=0}^{p} (a)_i (−p)_i / (i! (c)_i) x^i`, the hypergeometric series
/// `F(a, −p, c, x)`, which terminates after `p + 1` terms.
pub fn hypergeom_terminating(a: f64, p: u32, c: f64, x: f64) -> Result<f64> {
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::Domain(format!("c = {c} is a nonpositive integer")));
    }
    let b = -(p as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    for i in 0..p {
        let fi = i as f64;
        term *= (a + fi) * (b + fi) / ((fi + 1.0) * (c + fi)) * x;
        sum += term;
    }
    Ok(sum)
}

/// Derivative in `x` of [`hypergeom_terminating`], via the contiguous relation
/// `F'(a,b,c,x) = (ab/c) F(a+1, b+1, c+1, x)`.
pub fn hypergeom_terminating_dx(a: f64, p: u32, c: f64, x: f64) -> Result<f64> {
    if p == 0 {
        hypergeom_terminating(a, 0, c, x)?;
        return Ok(0.0);
    }
    let b = -(p as f64);
    Ok(a * b / c * hypergeom_terminating(a + 1.0, p - 1, c + 1.0, x)?)
}
