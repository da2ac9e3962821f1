use num_bigint::BigUint;

use wk_core::denominators::{d_gn, denominator_factorization, denominator_lcm, script_d, script_d_specs, tilde_d};
use wk_core::kappa::{enumerate_kappa_specs, KappaSpec};
use wk_core::tau::enumerate_specs;
use wk_core::{KappaEvaluator, PrimeFactorization, Rational, SmallRational, TauEvaluator};

#[test]
fn kappa_round_trip() {
    let ev = TauEvaluator::new();
    let kev = KappaEvaluator::new(&ev);
    for g in [2, 3] {
        for spec in enumerate_kappa_specs(g).unwrap() {
            let psi = ev.intersection(&spec.psi_spec()).unwrap();
            assert_eq!(kev.psi_from_kappa_identity(g, spec.indices()).unwrap(), psi, "{spec}");
        }
    }
}

#[test]
fn single_kappa() {
    let ev = TauEvaluator::new();
    let kev = KappaEvaluator::new(&ev);
    for g in 2..=6u32 {
        let v = kev
            .kappa_integral(&KappaSpec::new(g, vec![3 * g - 3]).unwrap())
            .unwrap();
        let den = wk_core::scalar::factorial(g as u64) * BigUint::from(24u32).pow(g);
        assert_eq!(v, Rational::new(1.into(), den.into()), "g={g}");
    }
}

#[test]
fn sandwich_through_genus_3() {
    let ev = TauEvaluator::new();
    let kev = KappaEvaluator::new(&ev);
    for g in [2, 3] {
        let tilde = tilde_d(&kev, g).unwrap();
        let top = d_gn(&ev, g, 3 * g as usize - 3).unwrap();
        assert_eq!(tilde, top, "g={g}");
        assert_eq!(script_d(&ev, g).unwrap(), top, "g={g}");
        for n in 1..3 * g as usize - 3 {
            assert!(d_gn(&ev, g, n).unwrap().divides(&tilde), "g={g} n={n}");
        }
    }
}

#[test]
fn lcm_is_order_independent() {
    let ev = TauEvaluator::new();
    let mut specs = script_d_specs(3).unwrap();
    let forward = denominator_lcm(&ev, &specs).unwrap();
    specs.reverse();
    assert_eq!(denominator_lcm(&ev, &specs).unwrap(), forward);
    specs.sort_by_key(|s| s.exponents().iter().rev().copied().collect::<Vec<_>>());
    assert_eq!(denominator_lcm(&ev, &specs).unwrap(), forward);
}

#[test]
fn incremental_lcm_matches_direct_at_genus_2() {
    use num_integer::Integer;
    let ev = TauEvaluator::new();
    for n in 1..=4 {
        let direct = enumerate_specs(2, n, 0)
            .map(|s| ev.intersection(&s).unwrap().denom().magnitude().clone())
            .fold(BigUint::from(1u32), |a, b| a.lcm(&b));
        assert_eq!(d_gn(&ev, 2, n).unwrap().to_biguint(), direct, "n={n}");
    }
}

#[test]
fn fixed_width_scalar_agrees() {
    let big = TauEvaluator::new();
    let small = wk_core::Evaluator::<SmallRational>::new();
    assert_eq!(d_gn(&small, 4, 2).unwrap(), d_gn(&big, 4, 2).unwrap());
    for spec in enumerate_specs(3, 4, 0) {
        let s = small.intersection(&spec).unwrap();
        assert_eq!(
            denominator_factorization(&s, 3).unwrap(),
            denominator_factorization(&big.intersection(&spec).unwrap(), 3).unwrap()
        );
    }
}

#[test]
fn prime_bound_holds_through_genus_6() {
    let ev = TauEvaluator::new();
    for g in 2..=6 {
        for n in 1..=3 {
            d_gn(&ev, g, n).unwrap();
        }
    }
    assert_eq!(
        d_gn(&ev, 6, 2).unwrap(),
        "2^22*3^8*5*7*11*13".parse::<PrimeFactorization>().unwrap()
    );
}
