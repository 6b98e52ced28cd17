use cmc_core::index::{
    catalog_lookup, deformation_bound, index_interval, lower_bounds_only, vision_bound, BoundSource, CatalogEntry,
    LowerBound,
};
use cmc_core::spectral::analytic_index;
use proptest::prelude::*;

fn lo(e: CatalogEntry) -> u32 {
    catalog_lookup(&e).unwrap().lo
}

#[test]
fn catalog_examples() {
    let r = catalog_lookup(&CatalogEntry::CatenoidCousin { mu: 0.5 }).unwrap();
    assert_eq!((r.lo, r.hi), (1, Some(1)));
    let r = catalog_lookup(&CatalogEntry::EnneperCousin { k: 1 }).unwrap();
    assert_eq!((r.lo, r.hi), (1, Some(1)));
    assert!(catalog_lookup(&CatalogEntry::DualEnneper).unwrap().flags.infinite_index);
    let r = catalog_lookup(&CatalogEntry::Horosphere).unwrap();
    assert_eq!((r.lo, r.hi), (0, Some(0)));
    let r = catalog_lookup(&CatalogEntry::CatenoidCousin { mu: 2.5 }).unwrap();
    assert_eq!((r.lo, r.hi, r.ind_u), (4, Some(5), Some(5)));
    let r = catalog_lookup(&CatalogEntry::CatenoidCousin { mu: 3.0 }).unwrap();
    assert_eq!(r.nullity, Some(3));
    assert_eq!(CatalogEntry::from_name("nope", None, None, None, false).unwrap_err().category(), "unknown-example");
}

#[test]
fn enneper_and_uy_intervals() {
    for k in 2..6u32 {
        let r = catalog_lookup(&CatalogEntry::EnneperCousin { k }).unwrap();
        assert_eq!((r.lo, r.hi), (2 * k - 2, Some(2 * k - 1)));
    }
    for m in 3..8u32 {
        let r = catalog_lookup(&CatalogEntry::UyPower { m }).unwrap();
        assert_eq!((r.lo, r.hi), (2 * m - 2, Some(2 * m - 1)));
    }
    let r = catalog_lookup(&CatalogEntry::UyLinear).unwrap();
    assert_eq!((r.lo, r.hi), (1, Some(1)));
}

#[test]
fn symbolic_tables() {
    for k in 1..=5u32 {
        assert_eq!(lo(CatalogEntry::CostaCousin { k, small_deformation: false }), 2 * k);
        assert_eq!(lo(CatalogEntry::CostaCousin { k, small_deformation: true }), 2 * k + 2);
        assert_eq!(deformation_bound(2 * k as i64 + 3).unwrap(), 2 * k + 2);
        assert_eq!(vision_bound(2 * k as i64 + 2, 2 * k as i64 + 2).unwrap(), 2 * k);
    }
    assert_eq!(lo(CatalogEntry::CostaCousin { k: 38, small_deformation: true }), 76);
    assert_eq!(lo(CatalogEntry::Genus1CatenoidCousin), 2);
    for n in 3..=8u32 {
        assert_eq!(lo(CatalogEntry::NNoidCousin { n }), 2 * n - 4);
        let r = catalog_lookup(&CatalogEntry::Genus1NNoidCousin { n, small_deformation: true }).unwrap();
        let vision = r.lower_bounds.iter().find(|b| b.source == BoundSource::Vision).unwrap().value;
        assert_eq!(vision as i64, if n % 2 == 0 { n as i64 - 3 } else { (n as i64 - 4).max(0) });
        let deform = r.lower_bounds.iter().find(|b| b.source == BoundSource::Deformation).unwrap().value;
        assert_eq!(deform, n - 2);
        assert_eq!(r.lo, n - 2);
    }
}

#[test]
fn catalog_never_flags_inconsistency() {
    let mut entries = vec![
        CatalogEntry::Horosphere,
        CatalogEntry::DualEnneper,
        CatalogEntry::UyLinear,
        CatalogEntry::Genus1CatenoidCousin,
    ];
    for k in 1..6 {
        entries.push(CatalogEntry::EnneperCousin { k });
        entries.push(CatalogEntry::CostaCousin { k, small_deformation: true });
    }
    for n in 3..9 {
        entries.push(CatalogEntry::NNoidCousin { n });
        entries.push(CatalogEntry::Genus1NNoidCousin { n, small_deformation: true });
        entries.push(CatalogEntry::UyPower { m: n });
    }
    for i in 1..50 {
        entries.push(CatalogEntry::CatenoidCousin { mu: i as f64 / 10.0 });
    }
    for e in entries {
        let r = catalog_lookup(&e).unwrap();
        assert!(!r.flags.inconsistent, "{e:?}");
        if let Some(hi) = r.hi {
            assert!(r.lo <= hi);
        }
        if r.flags.finite_total_curvature {
            assert!(!r.flags.infinite_index);
        }
    }
}

#[test]
fn catenoid_cousin_intervals_on_a_grid() {
    for i in 1..50 {
        if i % 10 == 0 {
            continue;
        }
        let mu = i as f64 / 10.0;
        let r = catalog_lookup(&CatalogEntry::CatenoidCousin { mu }).unwrap();
        let f = mu.floor() as u32;
        assert_eq!(analytic_index(mu, 1e-3).unwrap().ind_u, 2 * f + 1);
        if mu < 1.0 {
            // stability exclusion pins the interval {0, 1} to 1
            assert_eq!((r.lo, r.hi), (1, Some(1)), "μ={mu}");
        } else {
            assert_eq!((r.lo, r.hi), (2 * f, Some(2 * f + 1)), "μ={mu}");
        }
    }
}

proptest! {
    #[test]
    fn combined_bounds_stay_ordered(ind in 0i64..40, bounds in proptest::collection::vec(0u32..60, 0..5), horo in any::<bool>()) {
        let mut r = index_interval(ind, horo).unwrap();
        for b in &bounds {
            r = r.with_lower_bound(*b, BoundSource::Vision);
        }
        let hi = r.hi.unwrap();
        prop_assert!(r.lo <= hi);
        prop_assert_eq!(r.flags.inconsistent, bounds.iter().any(|b| *b > hi));
        let only = lower_bounds_only(&bounds.iter().map(|&value| LowerBound { value, source: BoundSource::Deformation }).collect::<Vec<_>>());
        prop_assert_eq!(only.lo, bounds.iter().copied().max().unwrap_or(0));
    }

    #[test]
    fn vision_bound_is_below_adjusted_number(v in 0i64..50, d in 0i64..50) {
        let v_adj = (v - d).max(0);
        let b = vision_bound(v, v_adj).unwrap();
        prop_assert!(b as i64 <= v_adj);
    }
}
