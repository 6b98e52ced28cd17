use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type Cplx = Complex64;

/// Dense 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[Cplx; 2]; 2]);

impl Mat2 {
    pub const fn new(a: Cplx, b: Cplx, c: Cplx, d: Cplx) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        let one = Cplx::new(1.0, 0.0);
        let zero = Cplx::new(0.0, 0.0);
        Mat2::new(one, zero, zero, one)
    }

    pub fn zero() -> Self {
        let zero = Cplx::new(0.0, 0.0);
        Mat2::new(zero, zero, zero, zero)
    }

    pub fn diag(a: Cplx, d: Cplx) -> Self {
        let zero = Cplx::new(0.0, 0.0);
        Mat2::new(a, zero, zero, d)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cplx {
        self.0[i][j]
    }

    pub fn det(&self) -> Cplx {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> Cplx {
        self.0[0][0] + self.0[1][1]
    }

    /// Inverse via the adjugate. Returns `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det.norm() == 0.0 || !det.is_finite() {
            return None;
        }
        let [[a, b], [c, d]] = self.0;
        Some(Mat2::new(d / det, -b / det, -c / det, a / det))
    }

    /// Inverse assuming det = 1 (the SL(2,C) case); exact adjugate.
    pub fn sl2_inverse(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(d, -b, -c, a)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a.conj(), c.conj(), b.conj(), d.conj())
    }

    pub fn scale(&self, s: Cplx) -> Mat2 {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a * s, b * s, c * s, d * s)
    }

    pub fn scale_re(&self, s: f64) -> Mat2 {
        self.scale(Cplx::new(s, 0.0))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flat_map(|row| row.iter()).map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flat_map(|r| r.iter()).all(|z| z.is_finite())
    }

    /// Rescale so that det = 1, choosing the principal square root.
    pub fn normalize_det(&self) -> Mat2 {
        let s = self.det().sqrt();
        self.scale(s.inv())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat2::new(c(2.0, 1.0), c(0.5, -1.0), c(1.0, 0.0), c(3.0, 0.5));
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_abs_diff(&Mat2::identity()) < 1e-14);
        let n = m.normalize_det();
        assert!((n.det() - c(1.0, 0.0)).norm() < 1e-14);
        assert!((n * n.sl2_inverse()).max_abs_diff(&Mat2::identity()) < 1e-14);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = Mat2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert!(m.inverse().is_none());
    }
}
