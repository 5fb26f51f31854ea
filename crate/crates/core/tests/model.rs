use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use iwatsuka::model::{IwatsukaField, Phase, Slope};
use proptest::prelude::*;

/// `sign(c*n2 - a*n1 - b*n1*sqrt(d))` from a 256-bit fixed-point square root.
fn fixed_point_sign(a: i64, b: i64, c: i64, d: i64, n: [i64; 2]) -> Ordering {
    let bits = 256u32;
    let root = (BigInt::from(d) << (2 * bits)).sqrt();
    let value = (BigInt::from(c * n[1] - a * n[0]) << bits) - BigInt::from(b * n[0]) * root;
    // the truncated root is low by < 1 ulp; values this close never occur on the test range
    assert!(value.abs() > BigInt::from(1u64 << 20) * BigInt::from(b * n[0]).abs() || value == BigInt::from(0));
    value.sign().cmp(&num_bigint::Sign::NoSign)
}

#[test]
fn quadratic_signs_match_fixed_point() {
    for (a, b, c, d) in [(0, 1, 1, 2), (1, -1, 2, 5), (-3, 2, 7, 3), (0, -5, 3, 13)] {
        let s = Slope::quadratic(a, b, c, d).unwrap();
        for n1 in -50..=50 {
            for n2 in -50..=50 {
                assert_eq!(s.x_value_sign([n1, n2]).unwrap(), fixed_point_sign(a, b, c, d, [n1, n2]), "{s} at ({n1},{n2})");
            }
        }
    }
}

#[test]
fn rational_signs_match_direct_evaluation() {
    for (p, q) in [(1, 2), (-2, 3), (7, 5), (0, 1)] {
        let s = Slope::rational(p, q).unwrap();
        for n1 in -50..=50 {
            for n2 in -50..=50 {
                let direct = (-(p as f64) / q as f64 * n1 as f64 + n2 as f64) * q as f64;
                assert_eq!(s.x_value_sign([n1, n2]).unwrap(), direct.round().partial_cmp(&0.0).unwrap());
            }
        }
    }
}

#[test]
fn quadratic_x_is_injective() {
    let s = Slope::sqrt(2).unwrap();
    let sites: Vec<[i64; 2]> = (-15..=15).flat_map(|a| (-15..=15).map(move |b| [a, b])).collect();
    for &n in &sites {
        for &m in &sites {
            if n != m {
                assert_ne!(s.compare_x(n, m).unwrap(), Ordering::Equal);
            }
        }
    }
}

#[test]
fn rational_values_sit_on_one_over_q_grid() {
    for (p, q) in [(1, 2), (2, 3), (-3, 4), (5, 2)] {
        let s = Slope::rational(p, q).unwrap();
        let m = p.abs().max(q);
        let mut scaled: Vec<i64> = Vec::new();
        for n1 in -m..=m {
            for n2 in -m..=m {
                let x = s.x_value([n1, n2]) * q as f64;
                assert!((x - x.round()).abs() < 1e-9);
                scaled.push(x.round() as i64);
            }
        }
        scaled.sort_unstable();
        scaled.dedup();
        assert_eq!(scaled.windows(2).map(|w| w[1] - w[0]).min(), Some(1));
    }
}

#[test]
fn float_slope_agrees_with_quadratic() {
    let exact = Slope::sqrt(2).unwrap();
    let approx = Slope::float("1.41421356237309504880168872420969807856967187537694807317667973799").unwrap();
    for n1 in -30..=30 {
        for n2 in -30..=30 {
            assert_eq!(exact.x_value_sign([n1, n2]).unwrap(), approx.x_value_sign([n1, n2]).unwrap());
        }
    }
}

fn field() -> impl Strategy<Value = IwatsukaField> {
    let slope = prop_oneof![
        (-4i64..=4, 1i64..=4).prop_map(|(p, q)| Slope::rational(p, q).unwrap()),
        Just(Slope::sqrt(2).unwrap()),
        Just(Slope::quadratic(1, -1, 2, 5).unwrap()),
        Just(Slope::PlusInfinity),
        Just(Slope::MinusInfinity),
    ];
    let perturbation = proptest::collection::vec((-5i64..=5, -5i64..=5, -8i64..=8), 0..6);
    (slope, 1i64..12, 1i64..12, perturbation).prop_filter_map("degenerate", |(s, a, b, pert)| {
        let f = IwatsukaField::new(s, Phase::turns(a, 12), Phase::turns(b, 12)).ok()?;
        Some(f.with_perturbation(pert.into_iter().map(|(x, y, k)| ([x, y], Phase::turns(k, 16)))))
    })
}

proptest! {
    #[test]
    fn circulation_equals_field(f in field(), n1 in -12i64..=12, n2 in -12i64..=12) {
        prop_assert_eq!(f.circulation([n1, n2]).unwrap(), f.field_value([n1, n2]).unwrap());
    }

    #[test]
    fn float_radians_circulate_to_tolerance(b in -3.0f64..3.0, n1 in -12i64..=12, n2 in -12i64..=12) {
        let f = IwatsukaField::new(Slope::sqrt(3).unwrap(), Phase::radians(b), Phase::radians(b + 1.0)).unwrap();
        let diff = f.circulation([n1, n2]).unwrap().to_f64() - f.field_value([n1, n2]).unwrap().to_f64();
        prop_assert!(diff.abs() < 1e-12);
    }
}
