use proptest::prelude::*;

use wk_core::automorphism::{floor_log_term, prime_power_bound};
use wk_core::primes::primes_up_to;
use wk_core::tau::{dilaton_reduce, normalize, string_reduce};
use wk_core::{Rational, Strategy as Order, TauEvaluator, TauSpec};

// A dimension-valid spec of genus <= max_genus with at most max_n points,
// built by cutting the degree 3g-3+n into n parts.
fn spec_strategy(max_genus: u32, max_n: usize) -> impl Strategy<Value = TauSpec> {
    (0..=max_genus)
        .prop_flat_map(move |g| {
            let n_min = (3 - 2 * g as i64).max(1) as usize;
            (Just(g), n_min..=max_n.max(n_min))
        })
        .prop_flat_map(|(g, n)| {
            let total = 3 * g + n as u32 - 3;
            (Just(g), prop::collection::vec(0..=total, n - 1), Just(total))
        })
        .prop_map(|(g, mut cuts, total)| {
            cuts.sort_unstable();
            cuts.push(total);
            let mut prev = 0;
            let exps = cuts
                .into_iter()
                .map(|c| {
                    let d = c - prev;
                    prev = c;
                    d
                })
                .collect();
            TauSpec::new(g, exps)
        })
}

fn ev() -> &'static TauEvaluator {
    static EV: std::sync::OnceLock<TauEvaluator> = std::sync::OnceLock::new();
    EV.get_or_init(TauEvaluator::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pivot_independence(spec in spec_strategy(5, 6)) {
        prop_assert!(spec.is_dimension_valid());
        // seeds such as <t1>_1 are not produced by the recursion itself
        prop_assume!(spec.exponents().iter().filter(|&&d| d > 0).count() >= 2);
        let direct = ev().intersection(&spec).unwrap();
        for (i, &d) in spec.exponents().iter().enumerate() {
            if d > 0 && (i == 0 || spec.exponents()[i - 1] != d) {
                prop_assert_eq!(&ev().intersection_via_pivot(&spec, i).unwrap(), &direct, "pivot {}", i);
            }
        }
    }

    #[test]
    fn permutation_symmetry(spec in spec_strategy(4, 6), seed in any::<u64>()) {
        let mut exps: Vec<i64> = spec.exponents().iter().map(|&d| d as i64).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..exps.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            exps.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = normalize(spec.genus() as i64, &exps).unwrap();
        prop_assert_eq!(ev().intersection(&permuted).unwrap(), ev().intersection(&spec).unwrap());
    }

    #[test]
    fn string_and_dilaton_consistency(spec in spec_strategy(4, 6)) {
        let value = ev().intersection(&spec).unwrap();
        if spec.contains(0) && spec.n() >= 2 && !(spec.genus() == 0 && spec.n() == 3) {
            let sum = string_reduce(&spec)
                .unwrap()
                .iter()
                .map(|s| ev().intersection(s).unwrap_or_default())
                .fold(Rational::default(), |a, b| a + b);
            prop_assert_eq!(&sum, &value);
        }
        if spec.contains(1) && spec.n() >= 2 {
            let (factor, rest) = dilaton_reduce::<Rational>(&spec).unwrap();
            if rest.is_dimension_valid() {
                prop_assert_eq!(factor * ev().intersection(&rest).unwrap(), value);
            }
        }
    }

    #[test]
    fn smoothing_chains_increase(spec in spec_strategy(2, 7), picks in prop::collection::vec(any::<u32>(), 1..8)) {
        let start = ev().intersection(&spec).unwrap();
        let mut cur = spec.clone();
        let mut prev = start.clone();
        for pick in picks {
            let e = cur.exponents();
            let pairs: Vec<(usize, usize)> = (0..e.len())
                .flat_map(|i| (0..e.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| e[i] + 2 <= e[j])
                .collect();
            if pairs.is_empty() {
                break;
            }
            let (i, j) = pairs[pick as usize % pairs.len()];
            let mut next = e.to_vec();
            next[i] += 1;
            next[j] -= 1;
            cur = TauSpec::new(cur.genus(), next);
            let v = ev().intersection(&cur).unwrap();
            prop_assert!(prev <= v, "{} -> {}", prev, v);
            prev = v;
        }
        prop_assert!(start <= prev);
    }
}

#[test]
fn reduction_order_independence_through_genus_3() {
    let evs = [Order::StringFirst, Order::DilatonFirst, Order::DvvOnly].map(TauEvaluator::with_strategy);
    for g in 0..=3u32 {
        let n_min = (3 - 2 * g as i64).max(1) as usize;
        for n in n_min..=3 * g as usize + 2 {
            for spec in wk_core::tau::enumerate_specs(g, n, 0) {
                let a = evs[0].intersection(&spec).unwrap();
                assert_eq!(evs[1].intersection(&spec).unwrap(), a, "{spec}");
                assert_eq!(evs[2].intersection(&spec).unwrap(), a, "{spec}");
            }
        }
    }
}

#[test]
fn positivity_through_genus_4() {
    for g in 0..=4u32 {
        let n_min = (3 - 2 * g as i64).max(1) as usize;
        for n in n_min..=3 * g as usize + 1 {
            for spec in wk_core::tau::enumerate_specs(g, n, 0) {
                assert!(ev().intersection(&spec).unwrap() > Rational::default(), "{spec}");
            }
        }
    }
}

#[test]
fn one_point_closed_form() {
    for g in 1..=10u32 {
        let v = ev().intersection(&TauSpec::new(g, vec![3 * g - 2])).unwrap();
        let den = wk_core::scalar::factorial(g as u64) * num_bigint::BigUint::from(24u32).pow(g);
        assert_eq!(v, Rational::new(1.into(), den.into()), "g={g}");
    }
}

#[test]
fn no_large_primes_in_bounded_prime_power() {
    for g in 2..=20u32 {
        for p in primes_up_to(200) {
            let k = floor_log_term(p, g).unwrap() as u32;
            let pk = (p as u128).pow(k);
            let target = 2 * p as u128 * g as u128;
            assert!(pk * (p as u128 - 1) <= target && target < pk * p as u128 * (p as u128 - 1));
            if p > 2 * g as u64 + 1 {
                assert_eq!(prime_power_bound(p, g).unwrap(), 0, "p={p} g={g}");
            }
        }
    }
}
