use cmc_core::geometry::pseudometric_factor;
use cmc_core::quad::integrate_scalar;
use cmc_core::spectral::{
    analytic_index, assemble_mode, enumerate_below, lambda_pq, numeric_spectrum, phi_pq, radial_profile, radial_weight,
    Boundary, SpectrumOptions,
};
use cmc_core::{cplx, BranchedPoint, HoloFn};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

#[test]
fn weight_is_the_log_radial_pseudometric() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let mu = rng.gen_range(0.2..4.0);
        let r: f64 = rng.gen_range(0.05..5.0);
        let rho =
            pseudometric_factor(&HoloFn::power(cplx(1.0, 0.0), mu), &BranchedPoint { z: cplx(r, 0.0), winding: 0 })
                .unwrap();
        let w = radial_weight(mu, r.ln());
        assert!((w - rho * r * r).abs() <= 1e-12 * w.max(1e-300), "μ={mu} r={r}");
    }
}

#[test]
fn radial_ode_residuals() {
    for &mu in &[0.5, 1.0, 2.5] {
        for e in enumerate_below(mu, 6.0).unwrap() {
            let (p, q) = (e.p, e.q);
            let v = |s: f64| radial_profile(p, q, mu, s).unwrap();
            let (a, b) = (0.05f64.ln(), 20f64.ln());
            let sup = (0..=400).map(|i| v(a + (b - a) * i as f64 / 400.0).abs()).fold(0.0, f64::max);
            for i in 0..=400 {
                let s = a + (b - a) * i as f64 / 400.0;
                let r = s.exp();
                // v_rr + v_r/r = v_ss/r², and ρ r² = w
                let res = (d2(v, s, 1e-3) + (e.lambda * radial_weight(mu, s) - (q * q) as f64) * v(s)) / (r * r);
                assert!(res.abs() <= 1e-6 * sup, "μ={mu} (p,q)=({p},{q}) r={r}: {res}");
            }
        }
    }
}

#[test]
fn legendre_ode_residuals() {
    for &mu in &[0.5, 1.0, 2.5] {
        for e in enumerate_below(mu, 6.0).unwrap() {
            let a = e.q as f64 / mu;
            let phi = |t: f64| phi_pq(e.p, e.q, mu, t).unwrap();
            for i in 0..=180 {
                let t = -0.9 + 0.01 * i as f64;
                let res = (1.0 - t * t) * d2(phi, t, 1e-3) - 2.0 * t * d1(phi, t, 1e-3)
                    + (e.lambda - a * a / (1.0 - t * t)) * phi(t);
                assert!(res.abs() <= 1e-6, "μ={mu} (p,q)=({},{}) t={t}: {res}", e.p, e.q);
            }
        }
    }
}

#[test]
fn same_mode_profiles_are_orthogonal() {
    for &mu in &[0.5, 1.0, 2.5] {
        let pairs = enumerate_below(mu, 12.0).unwrap();
        let l = 40.0 / mu;
        let inner = |p1: u32, p2: u32, q: u32| {
            integrate_scalar(
                |s| {
                    radial_profile(p1, q, mu, s).unwrap() * radial_profile(p2, q, mu, s).unwrap() * radial_weight(mu, s)
                },
                -l,
                l,
                1e-13,
                1e-11,
            )
            .unwrap()
        };
        for a in &pairs {
            for b in &pairs {
                if a.q == b.q && a.p < b.p {
                    let norm = (inner(a.p, a.p, a.q) * inner(b.p, b.p, a.q)).sqrt();
                    assert!(inner(a.p, b.p, a.q).abs() <= 1e-6 * norm);
                }
            }
        }
    }
}

#[test]
fn mu_one_is_the_round_sphere() {
    let list = enumerate_below(1.0, 12.5).unwrap();
    for n in 0..=3u32 {
        let target = (n * (n + 1)) as f64;
        let mult: u32 = list.iter().filter(|e| (e.lambda - target).abs() < 1e-12).map(|e| e.multiplicity).sum();
        assert_eq!(mult, 2 * n + 1);
    }
    assert_eq!(list.iter().map(|e| e.multiplicity).sum::<u32>(), 16);
}

#[test]
fn index_formula_on_a_grid() {
    for k in 1..50 {
        if k % 10 == 0 {
            continue;
        }
        let mu = k as f64 / 10.0;
        assert_eq!(analytic_index(mu, 1e-3).unwrap().ind_u, 2 * (mu.floor() as u32) + 1, "μ={mu}");
    }
    // two eigenvalues cross the threshold at each integer
    for n in 1..5 {
        let below = analytic_index(n as f64 - 1e-6, 0.0).unwrap().ind_u;
        let at = analytic_index(n as f64, 0.0).unwrap();
        let above = analytic_index(n as f64 + 1e-6, 0.0).unwrap().ind_u;
        assert_eq!(above, below + 2);
        assert_eq!(at.ind_u, below);
    }
}

#[test]
fn numeric_spectrum_matches_oracle() {
    let opts = SpectrumOptions { cutoff: 3.0, ..SpectrumOptions::default() };
    for &mu in &[0.5, 1.0, 2.0, 2.5, 3.0] {
        let report = numeric_spectrum(mu, &opts).unwrap();
        let oracle = enumerate_below(mu, 3.0).unwrap();
        for row in report.rows.iter().filter(|r| r.lambda_numeric < 3.0) {
            let scale = if row.lambda_analytic.abs() < 1.0 { 1.0 } else { row.lambda_analytic };
            assert!(row.abs_err <= 1e-3 * scale, "μ={mu}: {row:?}");
            assert_eq!(row.multiplicity, if row.q > 0 { 2 } else { 1 });
        }
        for e in &oracle {
            assert!(
                report.rows.iter().any(|r| r.q == e.q && r.rank == e.p && r.abs_err <= 1e-3 * e.lambda.max(1.0)),
                "μ={mu}: oracle value {e:?} not found"
            );
        }
    }
}

#[test]
fn numeric_index_counts() {
    let opts = SpectrumOptions::default();
    assert_eq!(numeric_spectrum(0.5, &opts).unwrap().ind_u_numeric, 1);
    assert_eq!(numeric_spectrum(2.5, &opts).unwrap().ind_u_numeric, 5);
    let r = numeric_spectrum(3.0, &opts).unwrap();
    assert_eq!((r.ind_u_numeric, r.nullity_numeric), (5, 3));
    assert!(numeric_spectrum(-1.0, &opts).is_err());
}

#[test]
fn eigenvalues_increase_with_q() {
    let mu = 1.7;
    let table: Vec<Vec<f64>> = (0..4)
        .map(|q| assemble_mode(q, mu, 12.0, 1201, Boundary::Dirichlet).unwrap().eigenvalues_below(12.0).unwrap())
        .collect();
    for q in 0..3 {
        for (rank, l) in table[q + 1].iter().enumerate() {
            assert!(*l > table[q][rank]);
        }
    }
}

#[test]
fn dirichlet_eigenvalues_decrease_as_domain_grows() {
    let h = 0.02;
    for q in 0..3 {
        let mut prev: Option<Vec<f64>> = None;
        for s in [3.0f64, 6.0, 12.0] {
            let n = (2.0 * s / h) as usize + 1;
            let ev = assemble_mode(q, 1.3, s, n, Boundary::Dirichlet).unwrap().eigenvalues_below(8.0).unwrap();
            if let Some(p) = prev {
                for (a, b) in ev.iter().zip(&p) {
                    assert!(*a <= *b + 1e-10, "q={q} S={s}: {a} > {b}");
                }
            }
            prev = Some(ev);
        }
    }
}

#[test]
fn eigenvectors_stay_bounded_at_the_puncture() {
    let h = 0.01;
    for (q, rank) in [(0u32, 1usize), (1, 0)] {
        let mut vals = vec![];
        for s in [12.0f64, 24.0, 48.0] {
            let n = (2.0 * s / h).round() as usize + 1;
            let prob = assemble_mode(q, 1.0, s, n, Boundary::default_for(q)).unwrap();
            let (_, v) = prob.eigenpair(rank).unwrap();
            let peak = v.iter().cloned().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
            let idx = (1.0 / h).round() as usize;
            vals.push(v[idx] / peak);
        }
        for w in vals.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-2, "q={q}: {vals:?}");
        }
    }
}

proptest! {
    #[test]
    fn lambda_is_increasing(p in 0i64..20, q in 0i64..20, mu in 0.05f64..10.0) {
        let l = lambda_pq(p, q, mu).unwrap();
        prop_assert!(lambda_pq(p + 1, q, mu).unwrap() > l);
        prop_assert!(lambda_pq(p, q + 1, mu).unwrap() > l);
    }

    #[test]
    fn analytic_index_matches_enumeration(mu in 0.05f64..6.0) {
        let a = analytic_index(mu, 1e-3).unwrap();
        let count: u32 = enumerate_below(mu, 2.0).unwrap().iter().map(|e| e.multiplicity).sum();
        prop_assert_eq!(a.ind_u, count);
        prop_assert!(a.ind_u % 2 == 1);
    }
}
