//! Adaptive Gauss–Kronrod (7/15) quadrature for smooth vector integrands.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// One G7K15 panel: (Kronrod estimate, |Kronrod − Gauss| per component).
pub fn gk15<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<([f64; N], [f64; N])>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    let fc = f(c)?;
    for n in 0..N {
        k[n] = WGK[7] * fc[n];
        g[n] = WG[3] * fc[n];
    }
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        for n in 0..N {
            let s = f1[n] + f2[n];
            k[n] += WGK[j] * s;
            if j % 2 == 1 {
                g[n] += WG[j / 2] * s;
            }
        }
    }
    let mut err = [0.0; N];
    for n in 0..N {
        k[n] *= h;
        err[n] = (k[n] - g[n] * h).abs();
    }
    Ok((k, err))
}

/// Adaptive bisection until the summed error estimate is below
/// `abs_tol + rel_tol·|I|` in every component.
pub fn integrate<const N: usize, F>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<[f64; N]>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    const MAX_PANELS: usize = 20_000;
    let mut panels = vec![(a, b, gk15(&mut f, a, b)?)];
    loop {
        let mut total = [0.0; N];
        let mut err = [0.0; N];
        for (_, _, (v, e)) in &panels {
            for n in 0..N {
                total[n] += v[n];
                err[n] += e[n];
            }
        }
        let converged = (0..N).all(|n| err[n] <= abs_tol + rel_tol * total[n].abs());
        if converged {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::Tolerance(format!(
                "quadrature did not converge on [{a}, {b}] (error estimate {:e})",
                err.iter().cloned().fold(0.0, f64::max)
            )));
        }
        // split the worst panel (largest error in any component)
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| {
                let ex = x.1 .2 .1.iter().cloned().fold(0.0, f64::max);
                let ey = y.1 .2 .1.iter().cloned().fold(0.0, f64::max);
                ex.total_cmp(&ey)
            })
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        panels.push((lo, mid, gk15(&mut f, lo, mid)?));
        panels.push((mid, hi, gk15(&mut f, mid, hi)?));
    }
}

/// Scalar convenience wrapper.
pub fn integrate_scalar<F>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    Ok(integrate(|x| Ok([f(x)]), a, b, abs_tol, rel_tol)?[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact_on_one_panel() {
        let mut f = |x: f64| Ok([x.powi(20), 1.0]);
        let (v, _) = gk15(&mut f, -1.0, 1.0).unwrap();
        assert!((v[0] - 2.0 / 21.0).abs() < 1e-15);
        assert!((v[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let v = integrate_scalar(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 1e-12).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((v - exact).abs() < 1e-9 * exact);
    }
}
