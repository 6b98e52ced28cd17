//! Weierstrass representations: the minimal-surface integral and the Bryant
//! frame equation `dF = F·c·[[g, −g²], [1, −g]]·f dz` with its immersion
//! into hyperbolic space.

pub mod catalog;
mod integrate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{metric_sample, MetricSample};
use crate::holo::{check_finite, BranchedPoint, Cplx, HoloFn, Path};
use crate::mat2::Mat2;
use crate::quad;

pub use integrate::{integrate_frame, integrate_frame_with, transport, IntegratorOptions};

/// How the integrated matrix `F` becomes a surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `Φ = (1/c)·F⁻¹·conj(F⁻¹)ᵗ`; `g` is the hyperbolic Gauss map.
    InverseFrame,
    /// `Φ = (1/c)·F·conj(F)ᵗ`; `g` plays the role of the secondary Gauss map.
    /// Used for data given as (secondary Gauss map, ω).
    DirectFrame,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassData {
    pub f: HoloFn,
    pub g: HoloFn,
    /// Mean curvature; positive.
    pub c: f64,
    pub z0: Cplx,
    pub punctures: Vec<Cplx>,
    pub convention: Convention,
    /// Isometry applied to the surface matrix before immersing (`Y ↦ P·Y`).
    pub placement: Mat2,
}

impl WeierstrassData {
    pub fn new(f: HoloFn, g: HoloFn, c: f64, z0: Cplx, punctures: Vec<Cplx>) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Precondition(format!("mean curvature c = {c} must be positive")));
        }
        check_finite(z0, "basepoint")?;
        if punctures.iter().any(|&p| (p - z0).norm() < 1e-12) {
            return Err(Error::Precondition("basepoint is a puncture".into()));
        }
        let data = WeierstrassData {
            f,
            g,
            c,
            z0,
            punctures,
            convention: Convention::InverseFrame,
            placement: Mat2::identity(),
        };
        data.check_compatible_at_origin()?;
        Ok(data)
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_placement(mut self, placement: Mat2) -> Self {
        self.placement = placement;
        self
    }

    pub fn is_branched(&self) -> bool {
        self.f.is_branched() || self.g.is_branched()
    }

    /// `f` vanishes to order 2k exactly where `g` has a pole of order k.
    /// Only checked at the origin, where the representation exposes orders.
    fn check_compatible_at_origin(&self) -> Result<()> {
        if self.punctures.iter().any(|p| p.norm() < 1e-12) {
            return Ok(());
        }
        if let (Some(of), Some(og)) = (self.f.order_at_origin(), self.g.order_at_origin()) {
            let expected = if og < 0.0 { -2.0 * og } else { 0.0 };
            if of.is_finite() && of != expected {
                return Err(Error::Precondition(format!(
                    "f has order {of} at 0 but g has order {og}: expected order {expected}"
                )));
            }
        }
        Ok(())
    }

    /// The generator `c·f·[[g, −g²], [1, −g]]` at a point.
    pub fn generator(&self, p: &BranchedPoint) -> Result<Mat2> {
        let (f, _) = self.f.eval(p)?;
        let (g, _) = self.g.eval(p)?;
        let cf = f * self.c;
        Ok(Mat2::new(cf * g, -cf * g * g, cf, -cf * g))
    }

    /// The matrix `Y` with `Φ = (1/c)·Y·Y*` for an integrated value `f`.
    pub fn surface_matrix(&self, f: &Mat2) -> Result<Mat2> {
        surface_matrix(self.convention, &self.placement, f)
    }

    pub fn upper_half_point(&self, f: &Mat2) -> Result<[f64; 3]> {
        let y = self.surface_matrix(f)?;
        hermitian_to_upper(&(y * y.adjoint()))
    }

    /// Metric data at a point where the integrated frame equals `f`.
    ///
    /// With the inverse convention the secondary Gauss map is
    /// `G = (F₁₁g + F₁₂)/(F₂₁g + F₂₂)` and `G' = g'/(F₂₁g + F₂₂)²`; with the
    /// direct convention `g` itself is the secondary Gauss map.
    pub fn metric_at(&self, f: &Mat2, p: &BranchedPoint) -> Result<MetricSample> {
        let (fv, _) = self.f.eval(p)?;
        let (g, dg) = self.g.eval(p)?;
        let (gs, dgs) = match self.convention {
            Convention::InverseFrame => {
                let num = f.get(0, 0) * g + f.get(0, 1);
                let den = f.get(1, 0) * g + f.get(1, 1);
                if den.norm() == 0.0 {
                    return Err(Error::Domain(format!("secondary Gauss map has a pole at {}", p.z)));
                }
                (num / den, dg / (den * den))
            }
            Convention::DirectFrame => (g, dg),
        };
        metric_sample(p.z, gs, dgs, fv, dg)
    }
}

fn surface_matrix(convention: Convention, placement: &Mat2, f: &Mat2) -> Result<Mat2> {
    let y = match convention {
        Convention::InverseFrame => f.inverse().ok_or_else(|| Error::Degenerate("singular frame".into()))?,
        Convention::DirectFrame => *f,
    };
    Ok(*placement * y)
}

/// A frame accumulated along a path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub f: Mat2,
    /// Sum of |det F − 1| observed before each renormalisation.
    pub det_drift: f64,
    pub path: Path,
    pub end: BranchedPoint,
    pub convention: Convention,
    pub placement: Mat2,
}

impl Frame {
    /// The matrix `Y` with `Φ = (1/c)·Y·Y*`.
    pub fn surface_matrix(&self) -> Result<Mat2> {
        surface_matrix(self.convention, &self.placement, &self.f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Hermitian,
    UpperHalf,
    PoincareBall,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbientPoint {
    Hermitian(Mat2),
    UpperHalf([f64; 3]),
    PoincareBall([f64; 3]),
}

impl AmbientPoint {
    /// Upper-half-space coordinates of the point (the model for curvature `−c²`
    /// is only rescaled in the Hermitian and ball pictures).
    pub fn to_upper_half(&self, c: f64) -> Result<[f64; 3]> {
        match *self {
            AmbientPoint::UpperHalf(x) => Ok(x),
            AmbientPoint::PoincareBall(b) => ball_to_upper(b, c),
            AmbientPoint::Hermitian(phi) => hermitian_to_upper(&phi.scale_re(c)),
        }
    }
}

/// Upper-half point of the positive Hermitian matrix `H` (up to scale).
pub fn hermitian_to_upper(h: &Mat2) -> Result<[f64; 3]> {
    let h22 = h.get(1, 1).re;
    if !(h22 > 0.0) || !h22.is_finite() {
        return Err(Error::Degenerate(format!("|C|²+|D|² = {h22} is not positive")));
    }
    let h12 = h.get(0, 1);
    Ok([h12.re / h22, h12.im / h22, 1.0 / h22])
}

/// Cayley map: upper-half `(0,0,1)` to the ball centre, ball radius `1/c`.
pub fn upper_to_ball(x: [f64; 3], c: f64) -> Result<[f64; 3]> {
    if !(x[2] > 0.0) {
        return Err(Error::Domain(format!("x3 = {} is not positive", x[2])));
    }
    let den = x[0] * x[0] + x[1] * x[1] + (x[2] + 1.0) * (x[2] + 1.0);
    let n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    Ok([2.0 * x[0] / den / c, 2.0 * x[1] / den / c, (n2 - 1.0) / den / c])
}

pub fn ball_to_upper(b: [f64; 3], c: f64) -> Result<[f64; 3]> {
    let b = [b[0] * c, b[1] * c, b[2] * c];
    let n2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    if n2 >= 1.0 {
        return Err(Error::Domain("point outside the open ball".into()));
    }
    let den = b[0] * b[0] + b[1] * b[1] + (1.0 - b[2]) * (1.0 - b[2]);
    Ok([2.0 * b[0] / den, 2.0 * b[1] / den, (1.0 - n2) / den])
}

pub fn immerse(frame: &Frame, c: f64, model: Model) -> Result<AmbientPoint> {
    if !(c > 0.0) {
        return Err(Error::Precondition(format!("c = {c} must be positive")));
    }
    let y = frame.surface_matrix()?;
    let h = y * y.adjoint();
    Ok(match model {
        Model::Hermitian => AmbientPoint::Hermitian(h.scale_re(1.0 / c)),
        Model::UpperHalf => AmbientPoint::UpperHalf(hermitian_to_upper(&h)?),
        Model::PoincareBall => AmbientPoint::PoincareBall(upper_to_ball(hermitian_to_upper(&h)?, c)?),
    })
}

/// `Re ∫ ((1−g²)f, i(1+g²)f, 2gf) dζ` along the path.
pub fn minimal_immersion(data: &WeierstrassData, path: &Path) -> Result<[f64; 3]> {
    if (path.start() - data.z0).norm() > 1e-12 {
        return Err(Error::Precondition("path must start at the basepoint".into()));
    }
    path.check_avoids(&data.punctures)?;
    let pts = integrate::sheet_points(data, path)?;
    let i = Cplx::new(0.0, 1.0);
    let mut x = [0.0; 3];
    for w in pts.windows(2) {
        let seg = integrate::Segment::new(w[0], w[1].z, data.is_branched());
        let d = seg.delta();
        let part = quad::integrate(
            |t| {
                let p = seg.point(t);
                let (f, _) = data.f.eval(&p)?;
                let (g, _) = data.g.eval(&p)?;
                let g2 = g * g;
                Ok([
                    ((Cplx::new(1.0, 0.0) - g2) * f * d).re,
                    (i * (Cplx::new(1.0, 0.0) + g2) * f * d).re,
                    (g * f * 2.0 * d).re,
                ])
            },
            0.0,
            1.0,
            1e-13,
            1e-12,
        )
        .map_err(|e| match e {
            Error::Domain(m) => Error::Integration(format!("integrand singular on path: {m}")),
            other => other,
        })?;
        for k in 0..3 {
            x[k] += part[k];
        }
    }
    Ok(x)
}

/// Path from the basepoint to `at`, arriving on the sheet selected by
/// `at.winding` (extra turns around the origin are appended when needed).
pub fn path_to(data: &WeierstrassData, at: &BranchedPoint) -> Result<Path> {
    let mut pts = vec![data.z0];
    if at.z != data.z0 {
        pts.push(at.z);
    }
    if !data.is_branched() {
        return Path::polyline(&pts);
    }
    let straight = Path::polyline(&pts)?.refined_about(&[Cplx::new(0.0, 0.0)])?;
    let arrived = *straight.branched_points(0)?.last().unwrap();
    let turns = at.winding - arrived.winding;
    let n = 32usize;
    let r = at.z.norm();
    let a0 = at.z.arg();
    for k in 0..turns.unsigned_abs() as usize * n {
        let step = if turns > 0 { 1.0 } else { -1.0 };
        let ang = a0 + step * 2.0 * std::f64::consts::PI * (k + 1) as f64 / n as f64;
        pts.push(Cplx::from_polar(r, ang));
    }
    // snap the last sample exactly onto `at.z`
    if turns != 0 {
        *pts.last_mut().unwrap() = at.z;
    }
    Path::polyline(&pts)
}

/// `dF₁₁/dF₂₁` of the integrated frame at its endpoint, computed from the
/// right-hand side of the frame equation.
pub fn secondary_gauss(data: &WeierstrassData, frame: &Frame) -> Result<Cplx> {
    let a = data.generator(&frame.end)?;
    let df = frame.f * a;
    let (d11, d12, d21, d22) = (df.get(0, 0), df.get(0, 1), df.get(1, 0), df.get(1, 1));
    let scale = df.max_abs().max(1e-300);
    let tiny = 1e-14 * scale;
    if d21.norm() <= tiny && d22.norm() <= tiny {
        return Err(Error::Degenerate("frame derivative vanishes (dF21 = dF22 = 0)".into()));
    }
    if d21.norm() > tiny {
        let g1 = d11 / d21;
        if d22.norm() > tiny {
            let g2 = d12 / d22;
            if (g1 - g2).norm() > 1e-8 * g1.norm().max(1.0) {
                return Err(Error::Tolerance(format!("dF11/dF21 = {g1} disagrees with dF12/dF22 = {g2}")));
            }
        }
        Ok(g1)
    } else {
        Ok(d12 / d22)
    }
}

/// Integrates to `at` and returns the secondary Gauss map there.
pub fn secondary_gauss_at(data: &WeierstrassData, at: &BranchedPoint) -> Result<Cplx> {
    let frame = integrate_frame(data, &path_to(data, at)?)?;
    secondary_gauss(data, &frame)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SU2Matrix {
    pub b11: Cplx,
    pub b12: Cplx,
}

impl SU2Matrix {
    pub fn new(b11: Cplx, b12: Cplx) -> Result<Self> {
        let n = b11.norm_sqr() + b12.norm_sqr();
        if (n - 1.0).abs() > 1e-10 {
            return Err(Error::Precondition(format!("|b11|² + |b12|² = {n}, not 1")));
        }
        Ok(SU2Matrix { b11, b12 })
    }

    pub fn from_mat2(m: &Mat2, tol: f64) -> Result<Self> {
        let b = SU2Matrix { b11: m.get(0, 0), b12: m.get(0, 1) };
        if m.max_abs_diff(&b.to_mat2()) > tol {
            return Err(Error::Precondition("matrix is not in SU(2)".into()));
        }
        SU2Matrix::new(b.b11, b.b12)
    }

    pub fn b21(&self) -> Cplx {
        -self.b12.conj()
    }

    pub fn b22(&self) -> Cplx {
        self.b11.conj()
    }

    pub fn to_mat2(&self) -> Mat2 {
        Mat2::new(self.b11, self.b12, self.b21(), self.b22())
    }
}

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpherePoint {
    Finite(Cplx),
    Infinity,
}

impl SpherePoint {
    pub fn finite(self) -> Option<Cplx> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }
}

/// Möbius action of a 2×2 matrix on the Riemann sphere.
pub fn mobius(m: &Mat2, w: SpherePoint) -> SpherePoint {
    let [[a, b], [c, d]] = m.0;
    let (num, den) = match w {
        SpherePoint::Finite(z) => (a * z + b, c * z + d),
        SpherePoint::Infinity => (a, c),
    };
    if den.norm() <= 1e-300 {
        SpherePoint::Infinity
    } else {
        SpherePoint::Finite(num / den)
    }
}

/// `(b11·G + b12) / (b21·G + b22)`.
pub fn su2_action(b: &SU2Matrix, g: Cplx) -> SpherePoint {
    mobius(&b.to_mat2(), SpherePoint::Finite(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monodromy {
    pub b: Mat2,
    pub in_su2: bool,
    /// `‖B·B* − I‖_max`
    pub defect: f64,
    pub det_defect: f64,
}

/// Monodromy `F ↦ B·F` of the Bryant frame around a closed loop at the basepoint.
pub fn monodromy(data: &WeierstrassData, loop_: &Path) -> Result<Monodromy> {
    if !loop_.is_closed() {
        return Err(Error::Precondition("monodromy needs a closed loop".into()));
    }
    let frame = integrate_frame(data, loop_)?;
    // F(start) = I, so B = F(end) for the Bryant frame; with the direct
    // convention the integrated matrix is the inverse Bryant frame.
    let b = match data.convention {
        Convention::InverseFrame => frame.f,
        Convention::DirectFrame => {
            frame.f.inverse().ok_or_else(|| Error::Degenerate("singular frame at the end of the loop".into()))?
        }
    };
    let defect = (b * b.adjoint()).max_abs_diff(&Mat2::identity());
    let det_defect = (b.det() - Cplx::new(1.0, 0.0)).norm();
    Ok(Monodromy { b, in_su2: defect <= 1e-6 && det_defect <= 1e-6, defect, det_defect })
}
