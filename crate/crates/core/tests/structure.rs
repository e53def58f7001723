use proptest::prelude::*;

use quadtau::arith::{kronecker, primes_up_to};
use quadtau::bounds::{
    constants_for, rho_harmonic_bound, rho_sum_bound, theorem1_bound, Positivity, NLOGN_FACTOR,
};
use quadtau::character::{kappa, make_character};
use quadtau::quadratic::{make_poly, QuadraticPoly};
use quadtau::rho::{rho_brute, rho_closed, rho_table, RhoContext};

const TEST_POLYS: [(i64, i64); 5] = [(0, 1), (5, 27), (2, 10), (26, 706), (5, -26)];

#[test]
fn rho_triples_agree() {
    for (b, c) in TEST_POLYS {
        let ctx = RhoContext::new(make_poly(b, c), 10_000).unwrap();
        assert!(ctx.mismatches().unwrap().is_empty(), "delta = {}", ctx.poly().delta());
    }
}

#[test]
fn rho_prefix_bounds_hold_for_every_x() {
    for (b, c) in TEST_POLYS {
        let p = make_poly(b, c);
        let k = kappa(p.delta());
        let rho = rho_table(&p, 10_000).unwrap();
        let (mut sum, mut harmonic) = (0u64, 0.0f64);
        for (i, &r) in rho.iter().enumerate() {
            let d = (i + 1) as u64;
            assert!(r <= d);
            sum += r;
            harmonic += r as f64 / d as f64;
            let x = d as f64;
            assert!((sum as f64) <= rho_sum_bound(k, x), "{p}: sum to {d}");
            assert!(harmonic < rho_harmonic_bound(k, x), "{p}: harmonic sum to {d}");
        }
    }
}

#[test]
fn character_is_primitive_and_matches_kronecker() {
    for delta in [-1i64, -2, -6, -30, 51] {
        let ch = make_character(delta).unwrap();
        let q = ch.conductor();
        assert_eq!(q, 4 * delta.unsigned_abs());
        assert_eq!(ch.minimal_period(), q);
        assert_eq!(ch.inducing_modulus(), q);
        for n in 0..3 * q {
            assert_eq!(ch.value(n), ch.value(n + q));
            assert_eq!(ch.value(n), kronecker(4 * i128::from(delta), i128::from(n)), "delta {delta}, n {n}");
        }
    }
}

#[test]
fn shift_bounds_on_values() {
    for (b, c) in &TEST_POLYS[..4] {
        let p = make_poly(*b, *c);
        let xi2 = 1 + 2 * i128::from(p.b().abs()) + i128::from(p.c().abs());
        assert!((p.xi() * p.xi() - xi2 as f64).abs() < 1e-9);
        let mut previous = 0;
        for n in 1..=10_000u64 {
            let v = p.eval(n).unwrap();
            assert!(v > previous);
            previous = v;
            assert!(v <= xi2 * i128::from(n * n));
            assert!(v <= i128::from(n + p.a_shift()).pow(2));
        }
    }
}

fn valid_poly() -> impl Strategy<Value = QuadraticPoly> {
    (-1i64..300, -5000i64..100_000)
        .prop_map(|(b, c)| make_poly(b, c))
        .prop_filter("hypotheses", |p| p.require_all().is_ok())
}

proptest! {
    #[test]
    fn display_parses_back(b in -1_000_000i64..1_000_000, c in -1_000_000i64..1_000_000) {
        let p = make_poly(b, c);
        let shown = p.to_string();
        prop_assert_eq!(shown.parse::<QuadraticPoly>().unwrap(), p);
    }

    #[test]
    fn rho_multiplicative_by_enumeration(d1 in 1u64..1000, d2 in 1u64..1000, which in 0usize..5) {
        prop_assume!(gcd(d1, d2) == 1);
        let (b, c) = TEST_POLYS[which];
        let p = make_poly(b, c);
        prop_assert_eq!(rho_brute(&p, d1 * d2), rho_brute(&p, d1) * rho_brute(&p, d2));
        prop_assert_eq!(rho_closed(&p, d1 * d2).unwrap(), rho_brute(&p, d1 * d2));
    }

    #[test]
    fn constants_are_consistent(p in valid_poly(), n in 1u64..10_000_000) {
        let bc = constants_for(&p, Positivity::Require).unwrap();
        prop_assert!(bc.c1 > 2.0 * NLOGN_FACTOR);
        prop_assert!(theorem1_bound(&bc, n + 1) > theorem1_bound(&bc, n));
    }

    #[test]
    fn values_stay_under_shifted_square(p in valid_poly(), n in 1u64..1_000_000) {
        let v = p.eval(n).unwrap();
        prop_assert!(v > 0);
        prop_assert!(v <= i128::from(n + p.a_shift()).pow(2));
        prop_assert!(p.eval(n + 1).unwrap() >= v);
    }

    #[test]
    fn character_agrees_with_kronecker_at_large_n(idx in 0usize..5, n in 0u64..u64::MAX / 2) {
        let delta = [-1i64, -2, -6, -30, 51][idx];
        let ch = make_character(delta).unwrap();
        prop_assert_eq!(ch.value(n), kronecker(4 * i128::from(delta), i128::from(n)));
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn rho_at_primes_counts_roots() {
    for (b, c) in TEST_POLYS {
        let p = make_poly(b, c);
        for l in primes_up_to(2000) {
            assert_eq!(rho_closed(&p, l).unwrap(), rho_brute(&p, l), "{p}, l = {l}");
        }
    }
}
