//! Symmetric eigensolvers: dense Householder + implicit QL, and Sturm
//! bisection with inverse iteration for tridiagonal pencils `K − λM`
//! with diagonal positive `M`.

// index loops mirror the classical algorithms
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};

/// Dense symmetric eigen-decomposition. Returns ascending eigenvalues and the
/// matching orthonormal eigenvectors as columns `v[row][col]`.
pub fn symmetric_eigen(a: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Precondition("matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            let scale = a[i][j].abs().max(a[j][i].abs()).max(1.0);
            if (a[i][j] - a[j][i]).abs() > 1e-12 * scale {
                return Err(Error::Precondition("matrix is not symmetric".into()));
            }
        }
    }
    if n == 0 {
        return Ok((vec![], vec![]));
    }
    let mut v: Vec<Vec<f64>> = a.to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e)?;
    Ok((d, v))
}

// Householder reduction to tridiagonal form (after the EISPACK routine).
fn tred2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    d.copy_from_slice(&v[n - 1][..n]);
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k][i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal form, accumulating transformations.
fn tql2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::Tolerance("QL iteration did not converge".into()));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in l + 2..n {
                    d[i] -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // ascending order
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in i + 1..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for row in v.iter_mut() {
                row.swap(i, k);
            }
        }
    }
    Ok(())
}

/// `A v = λ·Mass·v` by the reduction `Mass^{-1/2} A Mass^{-1/2}`. Eigenvectors
/// are returned as columns, normalised so that `vᵀ·Mass·v = 1`.
pub fn eig_gen_sym(a: &[Vec<f64>], mass: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    if mass.len() != n {
        return Err(Error::Precondition("mass and matrix sizes differ".into()));
    }
    if let Some(m) = mass.iter().find(|m| !(**m > 0.0)) {
        return Err(Error::Precondition(format!("mass entry {m} is not positive")));
    }
    let inv_sqrt: Vec<f64> = mass.iter().map(|m| 1.0 / m.sqrt()).collect();
    let b: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a[i][j] * inv_sqrt[i] * inv_sqrt[j]).collect()).collect();
    let (vals, mut vecs) = symmetric_eigen(&b)?;
    for (i, row) in vecs.iter_mut().enumerate() {
        for x in row.iter_mut() {
            *x *= inv_sqrt[i];
        }
    }
    Ok((vals, vecs))
}

/// Symmetric tridiagonal pencil `K − λM`, `M` diagonal and positive.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagPencil {
    pub diag: Vec<f64>,
    /// `off[i]` couples unknowns `i` and `i+1`.
    pub off: Vec<f64>,
    pub mass: Vec<f64>,
}

impl TridiagPencil {
    pub fn new(diag: Vec<f64>, off: Vec<f64>, mass: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() || mass.len() != diag.len() {
            return Err(Error::Precondition("inconsistent tridiagonal pencil sizes".into()));
        }
        if mass.iter().any(|m| !(*m > 0.0)) {
            return Err(Error::Precondition("mass entries must be positive".into()));
        }
        Ok(TridiagPencil { diag, off, mass })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda` (inertia of `K − λM`).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.len() {
            let a = self.diag[i] - lambda * self.mass[i];
            d = if i == 0 { a } else { a - self.off[i - 1] * self.off[i - 1] / d };
            if d == 0.0 {
                d = -f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::Precondition(format!("index {k} exceeds pencil size {}", self.len())));
        }
        let mut lo = -1.0;
        while self.count_below(lo) > k {
            lo *= 2.0;
            if lo < -1e300 {
                return Err(Error::Tolerance("no lower bracket for eigenvalue".into()));
            }
        }
        let mut hi = 1.0;
        while self.count_below(hi) <= k {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::Tolerance("no upper bracket for eigenvalue".into()));
            }
        }
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(lo.abs()).max(1e-300) {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Eigenvector for an eigenvalue estimate by inverse iteration,
    /// normalised to `vᵀMv = 1`.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let shift = lambda + 1e-10 * lambda.abs().max(1e-6);
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
        for _ in 0..4 {
            let rhs: Vec<f64> = x.iter().zip(&self.mass).map(|(v, m)| v * m).collect();
            x = self.solve_shifted(shift, &rhs)?;
            let nrm = x.iter().zip(&self.mass).map(|(v, m)| v * v * m).sum::<f64>().sqrt();
            if !(nrm > 0.0) || !nrm.is_finite() {
                return Err(Error::Tolerance("inverse iteration broke down".into()));
            }
            for v in x.iter_mut() {
                *v /= nrm;
            }
        }
        Ok(x)
    }

    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        // Thomas algorithm on K − shift·M
        let n = self.len();
        let mut c = vec![0.0; n];
        let mut y = vec![0.0; n];
        let mut piv = self.diag[0] - shift * self.mass[0];
        if piv == 0.0 {
            piv = f64::EPSILON;
        }
        y[0] = rhs[0] / piv;
        for i in 1..n {
            c[i - 1] = self.off[i - 1] / piv;
            piv = self.diag[i] - shift * self.mass[i] - self.off[i - 1] * c[i - 1];
            if piv == 0.0 {
                piv = f64::EPSILON * self.diag[i].abs().max(1.0);
            }
            y[i] = (rhs[i] - self.off[i - 1] * y[i - 1]) / piv;
        }
        for i in (0..n - 1).rev() {
            y[i] -= c[i] * y[i + 1];
        }
        Ok(y)
    }

    /// `‖(K − λM)v‖∞`
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut r = (self.diag[i] - lambda * self.mass[i]) * v[i];
                if i > 0 {
                    r += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    r += self.off[i] * v[i + 1];
                }
                r.abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = self.diag[i];
            if i + 1 < n {
                a[i][i + 1] = self.off[i];
                a[i + 1][i] = self.off[i];
            }
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eig_gen_sym_examples() {
        let (v, _) = eig_gen_sym(&[vec![1.0, 0.0], vec![0.0, 2.0]], &[1.0, 1.0]).unwrap();
        assert_eq!(v, vec![1.0, 2.0]);
        let (v, _) = eig_gen_sym(&[vec![2.0, -1.0], vec![-1.0, 2.0]], &[1.0, 1.0]).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
        let (v, _) = eig_gen_sym(&[vec![2.0]], &[4.0]).unwrap();
        assert!((v[0] - 0.5).abs() < 1e-15);
        assert!(eig_gen_sym(&[vec![2.0]], &[0.0]).is_err());
    }

    #[test]
    fn dense_residuals_and_agreement_with_pencil() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|i| 2.0 + 0.3 * (i as f64).sin()).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| -1.0 + 0.1 * (i as f64).cos()).collect();
        let mass: Vec<f64> = (0..n).map(|i| 0.5 + (i as f64 * 0.37).cos().powi(2)).collect();
        let pencil = TridiagPencil::new(diag, off, mass.clone()).unwrap();
        let a = pencil.to_dense();
        let (vals, vecs) = eig_gen_sym(&a, &mass).unwrap();
        let norm_a = a.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
        for k in 0..n {
            let col: Vec<f64> = (0..n).map(|i| vecs[i][k]).collect();
            assert!(pencil.residual(vals[k], &col) <= 1e-9 * norm_a);
            let b = pencil.eigenvalue(k).unwrap();
            assert!((b - vals[k]).abs() <= 1e-11 * vals[k].abs().max(1.0));
            let v = pencil.eigenvector(b).unwrap();
            assert!(pencil.residual(b, &v) <= 1e-8 * norm_a);
        }
        for w in vals.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }
}
