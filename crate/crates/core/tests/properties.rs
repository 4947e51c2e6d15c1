use liecensus::bounds::{p_bound, p_range_limit};
use liecensus::rootsystem::root_closure;
use liecensus::{
    bn1_bound, candidate_count_caps, dual_weight, field_exponents, is_self_dual, positive_root_count, root_system,
    weyl_dim, Family, LieType, Weight,
};
use num_rational::Ratio;
use proptest::prelude::*;

fn lie_type(max_rank: usize) -> impl Strategy<Value = LieType> {
    (0..Family::ALL.len(), 1..=max_rank).prop_filter_map("rank outside family", |(i, n)| {
        let f = Family::ALL[i];
        let n = f.fixed_rank().unwrap_or(n);
        LieType::new(f, n).ok()
    })
}

fn typed_weight(max_rank: usize, max_coeff: u32) -> impl Strategy<Value = (LieType, Weight)> {
    lie_type(max_rank).prop_flat_map(move |ty| {
        prop::collection::vec(0..=max_coeff, ty.rank()).prop_map(move |v| (ty, Weight::new(v)))
    })
}

proptest! {
    #[test]
    fn increment_strictly_increases((ty, w) in typed_weight(8, 8), idx in any::<prop::sample::Index>()) {
        let mut v = w.coeffs().to_vec();
        let i = idx.index(v.len());
        v[i] += 1;
        let d = weyl_dim(ty, &w).unwrap();
        let d2 = weyl_dim(ty, &Weight::new(v)).unwrap();
        prop_assert!(d2.value() > d.value());
    }

    #[test]
    fn duality_preserves_dimension((ty, w) in typed_weight(8, 6)) {
        let dual = dual_weight(ty, &w).unwrap();
        prop_assert_eq!(weyl_dim(ty, &dual).unwrap(), weyl_dim(ty, &w).unwrap());
        prop_assert_eq!(dual_weight(ty, &dual).unwrap(), w.clone());
        prop_assert_eq!(is_self_dual(ty, &w).unwrap(), dual == w);
    }

    #[test]
    fn trivial_iff_zero((ty, w) in typed_weight(8, 3)) {
        let d = weyl_dim(ty, &w).unwrap();
        prop_assert_eq!(d == 1u64, w.is_zero());
    }

    #[test]
    fn below_power_bound((ty, w) in typed_weight(8, 10)) {
        let d = weyl_dim(ty, &w).unwrap();
        let b = bn1_bound(ty, &w).unwrap();
        prop_assert!(d.value() <= b.value());
    }

    #[test]
    fn shape_mismatch_is_rejected(ty in lie_type(8), extra in 1usize..3) {
        let w = Weight::new(vec![0; ty.rank() + extra]);
        prop_assert!(weyl_dim(ty, &w).is_err());
    }

    #[test]
    fn field_exponents_contain_k(k in 1u64..200, e in 1u8..=3) {
        let ts = field_exponents(k, e).unwrap();
        prop_assert!(ts.contains(&k));
        prop_assert!(ts.windows(2).all(|w| w[0] < w[1]));
        for &t in &ts {
            prop_assert!(t == k || t * e as u64 == k);
        }
        prop_assert_eq!(ts.len(), if e > 1 && k % e as u64 == 0 { 2 } else { 1 });
    }
}

#[test]
fn root_counts_and_size_bound() {
    for f in Family::ALL {
        let ranks: Vec<usize> = match f.fixed_rank() {
            Some(n) => vec![n],
            None => (f.min_rank()..=12).collect(),
        };
        for n in ranks {
            let ty = LieType::new(f, n).unwrap();
            let rs = root_system(ty);
            assert_eq!(rs.l(), positive_root_count(ty), "{ty}");
            assert!(rs.l() < 2 * n * n, "{ty}");
        }
    }
}

#[test]
fn closure_is_idempotent() {
    for f in Family::ALL {
        let n = f.fixed_rank().unwrap_or(5);
        let rs = root_system(LieType::new(f, n).unwrap());
        let again = root_closure(&rs.cartan, &rs.positive_roots);
        assert_eq!(again, rs.positive_roots, "{f}");
    }
}

#[test]
fn type_a_root_sum() {
    // Σ Φ⁺ = 2ρ has coordinate i(n+1-i) on α_i
    for n in 1..=12 {
        let rs = root_system(LieType::new(Family::A, n).unwrap());
        for i in 1..=n {
            let s: u32 = rs.positive_roots.iter().map(|r| r[i - 1]).sum();
            assert_eq!(s as usize, i * (n + 1 - i), "A{n}, i={i}");
        }
    }
}

#[test]
fn bound_floors_certified_and_monotone() {
    let mut prev = None;
    for r in 2..=50u64 {
        let b = p_bound(r);
        assert!(b.verify_floor(), "p_bound({r})");
        let caps = candidate_count_caps(r);
        for c in [&caps.bb1, &caps.th8, &caps.t11] {
            assert!(c.exceeds_budget || c.verify_floor(), "r={r}: {c}");
        }
        assert_eq!(caps.t11.exponent, Ratio::new(r * r + 8, 2));
        assert_eq!(caps.t11.exponent, caps.th8.exponent);
        let f = b.floor_value.clone().unwrap();
        if let Some(p) = prev {
            assert!(f > p, "p_bound not increasing at r={r}");
        }
        prev = Some(f);
    }
    assert_eq!(p_range_limit(3), Some(141));
    assert_eq!(p_range_limit(2), Some(4));
}
