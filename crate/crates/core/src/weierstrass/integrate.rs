use crate::error::{Error, Result};
use crate::holo::{BranchedPoint, Cplx, Path};
use crate::mat2::Mat2;

use super::{Frame, WeierstrassData};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorOptions {
    /// Local error target per step (step doubling).
    pub tol: f64,
    /// Fixed step length in the z-plane instead of adaptive control.
    pub fixed_step: Option<f64>,
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions { tol: 1e-12, fixed_step: None, max_steps: 2_000_000 }
    }
}

impl IntegratorOptions {
    pub fn fixed(step: f64) -> Self {
        IntegratorOptions { fixed_step: Some(step), ..Default::default() }
    }
}

const DET_TOL: f64 = 1e-13;

/// Straight segment with the sheet tracked by continuous argument.
pub(crate) struct Segment {
    start: BranchedPoint,
    end: Cplx,
    branched: bool,
}

impl Segment {
    pub(crate) fn new(start: BranchedPoint, end: Cplx, branched: bool) -> Self {
        Segment { start, end, branched }
    }

    pub(crate) fn delta(&self) -> Cplx {
        self.end - self.start.z
    }

    pub(crate) fn point(&self, t: f64) -> BranchedPoint {
        let z = self.start.z + self.delta() * t;
        if !self.branched {
            return BranchedPoint { z, winding: 0 };
        }
        let theta = self.start.continuous_arg() + (z / self.start.z).arg();
        let winding = ((theta - z.arg()) / (2.0 * std::f64::consts::PI)).round() as i64;
        BranchedPoint { z, winding }
    }
}

/// Samples of the path on their sheets (refined around the origin for
/// branched data).
pub(crate) fn sheet_points(data: &WeierstrassData, path: &Path) -> Result<Vec<BranchedPoint>> {
    sheet_points_from(data, path, 0)
}

fn sheet_points_from(data: &WeierstrassData, path: &Path, winding: i64) -> Result<Vec<BranchedPoint>> {
    if data.is_branched() {
        path.refined_about(&[Cplx::new(0.0, 0.0)])?.branched_points(winding)
    } else {
        Ok(path.points().iter().map(|&z| BranchedPoint { z, winding: 0 }).collect())
    }
}

fn eval_generator(data: &WeierstrassData, seg: &Segment, t: f64) -> Result<Mat2> {
    let a = data.generator(&seg.point(t)).map_err(|e| match e {
        Error::Domain(m) => Error::Integration(format!("frame equation singular: {m}")),
        other => other,
    })?;
    Ok(a.scale(seg.delta()))
}

fn rk4(f: &Mat2, a0: &Mat2, am: &Mat2, a1: &Mat2, h: f64) -> Mat2 {
    let k1 = *f * *a0;
    let k2 = (*f + k1.scale_re(0.5 * h)) * *am;
    let k3 = (*f + k2.scale_re(0.5 * h)) * *am;
    let k4 = (*f + k3.scale_re(h)) * *a1;
    *f + (k1 + k2.scale_re(2.0) + k3.scale_re(2.0) + k4).scale_re(h / 6.0)
}

fn renormalize(f: &mut Mat2, drift: &mut f64) {
    let det = f.det();
    let dev = (det - Cplx::new(1.0, 0.0)).norm();
    if dev > DET_TOL {
        *drift += dev;
        *f = f.scale(Cplx::new(1.0, 0.0) / det.sqrt());
    }
}

fn integrate_segment(
    data: &WeierstrassData,
    seg: &Segment,
    f: &mut Mat2,
    drift: &mut f64,
    opts: &IntegratorOptions,
    steps: &mut usize,
) -> Result<()> {
    let len = seg.delta().norm();
    if len == 0.0 {
        return Ok(());
    }
    if let Some(step) = opts.fixed_step {
        let n = (len / step).ceil().max(1.0) as usize;
        let h = 1.0 / n as f64;
        let mut a0 = eval_generator(data, seg, 0.0)?;
        for k in 0..n {
            let t = k as f64 * h;
            let am = eval_generator(data, seg, t + 0.5 * h)?;
            let a1 = eval_generator(data, seg, t + h)?;
            *f = rk4(f, &a0, &am, &a1, h);
            renormalize(f, drift);
            a0 = a1;
        }
        *steps += n;
        return Ok(());
    }

    let mut t = 0.0;
    let mut h = (0.05 / len).min(1.0);
    let mut a0 = eval_generator(data, seg, 0.0)?;
    while t < 1.0 {
        if *steps >= opts.max_steps {
            return Err(Error::Tolerance(format!(
                "frame integration exceeded {} steps near z = {}",
                opts.max_steps,
                seg.point(t).z
            )));
        }
        h = h.min(1.0 - t);
        let aq1 = eval_generator(data, seg, t + 0.25 * h)?;
        let am = eval_generator(data, seg, t + 0.5 * h)?;
        let aq3 = eval_generator(data, seg, t + 0.75 * h)?;
        let a1 = eval_generator(data, seg, t + h)?;
        let full = rk4(f, &a0, &am, &a1, h);
        let half = rk4(f, &a0, &aq1, &am, 0.5 * h);
        let two = rk4(&half, &am, &aq3, &a1, 0.5 * h);
        let scale = two.max_abs().max(1.0);
        let err = two.max_abs_diff(&full) / 15.0;
        if !two.is_finite() {
            return Err(Error::Integration(format!("frame blew up near z = {}", seg.point(t).z)));
        }
        *steps += 1;
        if err <= opts.tol * scale {
            *f = two;
            renormalize(f, drift);
            t += h;
            a0 = a1;
            let grow = if err == 0.0 { 4.0 } else { (0.9 * (opts.tol * scale / err).powf(0.2)).min(4.0) };
            h *= grow.max(1.0);
        } else {
            h *= (0.9 * (opts.tol * scale / err).powf(0.2)).max(0.1);
            if h * len < 1e-14 * (1.0 + seg.point(t).z.norm()) {
                return Err(Error::Integration(format!(
                    "step size underflow near z = {} (pole of the integrand?)",
                    seg.point(t).z
                )));
            }
        }
    }
    Ok(())
}

fn integrate_points(
    data: &WeierstrassData,
    mut f: Mat2,
    pts: &[BranchedPoint],
    opts: &IntegratorOptions,
) -> Result<(Mat2, f64)> {
    let mut drift = 0.0;
    let mut steps = 0usize;
    for w in pts.windows(2) {
        let seg = Segment::new(w[0], w[1].z, data.is_branched());
        integrate_segment(data, &seg, &mut f, &mut drift, opts, &mut steps)?;
    }
    Ok((f, drift))
}

pub fn integrate_frame(data: &WeierstrassData, path: &Path) -> Result<Frame> {
    integrate_frame_with(data, path, &IntegratorOptions::default())
}

/// Integrates `dF = F·A dz` along `path` from `F(z0) = I`.
pub fn integrate_frame_with(data: &WeierstrassData, path: &Path, opts: &IntegratorOptions) -> Result<Frame> {
    if (path.start() - data.z0).norm() > 1e-12 {
        return Err(Error::Precondition(format!("path starts at {} but the basepoint is {}", path.start(), data.z0)));
    }
    path.check_avoids(&data.punctures)?;
    let pts = sheet_points(data, path)?;
    let (f, det_drift) = integrate_points(data, Mat2::identity(), &pts, opts)?;
    Ok(Frame {
        f,
        det_drift,
        path: path.clone(),
        end: *pts.last().unwrap(),
        convention: data.convention,
        placement: data.placement,
    })
}

/// Carries a frame value `f0` known at `from` along the straight segment to
/// `to`. Returns the new value, the endpoint on its sheet and the det drift.
pub fn transport(
    data: &WeierstrassData,
    f0: Mat2,
    from: BranchedPoint,
    to: Cplx,
    opts: &IntegratorOptions,
) -> Result<(Mat2, BranchedPoint, f64)> {
    if from.z == to {
        return Ok((f0, from, 0.0));
    }
    let path = Path::segment(from.z, to)?;
    path.check_avoids(&data.punctures)?;
    let pts = sheet_points_from(data, &path, from.winding)?;
    let (f, drift) = integrate_points(data, f0, &pts, opts)?;
    Ok((f, *pts.last().unwrap(), drift))
}
