//! Least common multiples of denominators of intersection numbers, and
//! mechanical checks of their divisibility properties.
//!
//! * `D(g, n)`: lcm over every correlator on `M_{g,n}`.
//! * `script_D(g)`: lcm over every correlator of genus `g` with all exponents `>= 2`.
//! * `tilde_D(g)`: lcm over every pure kappa integral on `M_g`.
//!
//! Denominators are factored over the primes up to `2g+1`. A leftover
//! cofactor means a larger prime divides some denominator, which the prime
//! bound for automorphisms of stable curves rules out; it surfaces as
//! [`Error::UnexpectedPrime`] instead of being silently absorbed.

use rayon::prelude::*;

use crate::automorphism::prime_bound;
use crate::error::{domain, Error, Result};
use crate::kappa::{enumerate_kappa_specs, KappaEvaluator};
use crate::oracles::dijkgraaf_two_point_series;
use crate::primes::{is_prime, ord_factorial, primes_up_to, PrimeFactorization};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::tau::{enumerate_specs, Evaluator, TauSpec};

/// Factors the denominator of an intersection number of genus `genus`.
pub fn denominator_factorization<S: Scalar>(value: &S, genus: u32) -> Result<PrimeFactorization> {
    let denominator = value.denominator();
    let bound = prime_bound(genus);
    let (factors, cofactor) = PrimeFactorization::factor_smooth(&denominator, bound);
    if cofactor != num_bigint::BigUint::from(1u32) {
        return Err(Error::UnexpectedPrime {
            genus,
            bound,
            denominator,
            cofactor,
        });
    }
    Ok(factors)
}

/// lcm of the denominators of the given correlators, evaluated in parallel.
pub fn denominator_lcm<S: Scalar>(ev: &Evaluator<S>, specs: &[TauSpec]) -> Result<PrimeFactorization> {
    specs
        .par_iter()
        .map(|s| denominator_factorization(&ev.intersection(s)?, s.genus()))
        .try_reduce(PrimeFactorization::one, |a, b| Ok(a.lcm(&b)))
}

fn check_stable(g: u32, n: usize) -> Result<()> {
    if 2 * g as i64 - 2 + n as i64 >= 1 {
        Ok(())
    } else {
        Err(domain(format!("M_{{{g},{n}}} is unstable")))
    }
}

fn check_genus(g: u32) -> Result<()> {
    if g >= 2 {
        Ok(())
    } else {
        Err(domain(format!("defined only for g >= 2, got {g}")))
    }
}

/// `D_{g,n}`.
pub fn d_gn<S: Scalar>(ev: &Evaluator<S>, g: u32, n: usize) -> Result<PrimeFactorization> {
    check_stable(g, n)?;
    let specs: Vec<TauSpec> = enumerate_specs(g, n, 0).collect();
    denominator_lcm(ev, &specs)
}

/// Correlators entering `script_D(g)`: `1 <= n <= 3g-3`, exponents `>= 2`.
pub fn script_d_specs(g: u32) -> Result<Vec<TauSpec>> {
    check_genus(g)?;
    Ok((1..=(3 * g - 3) as usize)
        .flat_map(|n| enumerate_specs(g, n, 2))
        .collect())
}

/// `script_D_g`, the lcm over correlators with all exponents at least 2.
pub fn script_d<S: Scalar>(ev: &Evaluator<S>, g: u32) -> Result<PrimeFactorization> {
    denominator_lcm(ev, &script_d_specs(g)?)
}

/// `tilde_D_g`, the lcm over pure kappa integrals on `M_g`.
pub fn tilde_d<S: Scalar>(kev: &KappaEvaluator<'_, S>, g: u32) -> Result<PrimeFactorization> {
    check_genus(g)?;
    let specs = enumerate_kappa_specs(g)?;
    specs
        .par_iter()
        .map(|k| denominator_factorization(&kev.kappa_integral(k)?, g))
        .try_reduce(PrimeFactorization::one, |a, b| Ok(a.lcm(&b)))
}

/// Checks `D(g, n) | D(g, n+1)` for every stable `n < n_max`.
pub fn verify_divisibility_chain<S: Scalar>(ev: &Evaluator<S>, g: u32, n_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("chain g={g}"), "pairs");
    let n_min = (3 - 2 * g as i64).max(1) as usize;
    if n_max <= n_min {
        return Ok(report);
    }
    let values = (n_min..=n_max).map(|n| d_gn(ev, g, n)).collect::<Result<Vec<_>>>()?;
    for (i, pair) in values.windows(2).enumerate() {
        let n = n_min + i;
        report.check(
            pair[0].divides(&pair[1]),
            || format!("D({g},{n}) | D({g},{})", n + 1),
            || format!("{} divides {}", pair[0], pair[1]),
            || "no".to_string(),
        );
    }
    Ok(report)
}

/// Predicted `ord(p, script_D_g)`: `3g + ord(2, g!)`, `g + ord(3, g!)`, `floor(2g/(p-1))`.
pub fn conjectured_order(p: u64, g: u32) -> Result<u32> {
    let g64 = g as u64;
    Ok(match p {
        2 => 3 * g + ord_factorial(2, g64)?,
        3 => g + ord_factorial(3, g64)?,
        _ => {
            if !is_prime(p) {
                return Err(domain(format!("{p} is not prime")));
            }
            (2 * g64 / (p - 1)) as u32
        }
    })
}

/// Compares the prime orders of `script_D_g` with their conjectured values.
pub fn verify_prime_orders<S: Scalar>(ev: &Evaluator<S>, g: u32) -> Result<VerificationReport> {
    let d = script_d(ev, g)?;
    let mut report = VerificationReport::new(format!("conj25 g={g}"), "primes");
    let mut primes = primes_up_to(prime_bound(g));
    primes.extend(d.primes().filter(|&p| p > prime_bound(g)));
    for p in primes {
        let expected = conjectured_order(p, g)?;
        let actual = d.exponent(p);
        report.check(
            expected == actual,
            || format!("ord({p}, script_D_{g})"),
            || expected.to_string(),
            || actual.to_string(),
        );
    }
    Ok(report)
}

/// Parts (i)-(iv) of the prime-factor bounds for `script_D_g`.
pub fn verify_prime_factors<S: Scalar>(ev: &Evaluator<S>, g: u32) -> Result<VerificationReport> {
    let d = script_d(ev, g)?;
    check_prime_factors(&d, g)
}

pub(crate) fn check_prime_factors(d: &PrimeFactorization, g: u32) -> Result<VerificationReport> {
    let bound = prime_bound(g);
    let mut report = VerificationReport::new(format!("thm43 g={g}"), "parts");

    let largest = d.largest_prime().unwrap_or(1);
    report.check(
        largest <= bound,
        || "(i) no prime > 2g+1".into(),
        || format!("largest prime <= {bound}"),
        || format!("{largest}"),
    );

    let missing: Vec<u64> = primes_up_to(bound)
        .into_iter()
        .filter(|&p| d.exponent(p) == 0)
        .collect();
    report.check(
        missing.is_empty(),
        || "(ii) every prime <= 2g+1 divides".into(),
        || "none missing".into(),
        || format!("missing {missing:?}"),
    );

    if is_prime(bound) {
        let ord = d.exponent(bound);
        report.check(
            ord == 1,
            || format!("(iii) ord({bound}, script_D_{g})"),
            || "1".into(),
            || ord.to_string(),
        );
    }

    let expected = conjectured_order(2, g)?;
    let ord2 = d.exponent(2);
    report.check(
        ord2 == expected,
        || format!("(iv) ord(2, script_D_{g})"),
        || expected.to_string(),
        || ord2.to_string(),
    );
    Ok(report)
}

/// Parts (i)-(iv) of the 2-point denominator bounds, read off Dijkgraaf's
/// series rather than the DVV recursion.
pub fn verify_two_point_denominators<S: Scalar>(g: u32) -> Result<VerificationReport> {
    check_genus(g)?;
    let bound = prime_bound(g);
    let series = dijkgraaf_two_point_series::<S>(3 * g - 1);
    let mut report = VerificationReport::new(format!("lemma42 g={g}"), "cases");

    let mut denominators = Vec::new();
    let mut lcm = PrimeFactorization::one();
    for d in 0..=3 * g - 1 {
        let v = series.coefficient(d, 3 * g - 1 - d).expect("within truncation");
        let (f, cofactor) = PrimeFactorization::factor_smooth(&v.denominator(), bound);
        report.check(
            cofactor == num_bigint::BigUint::from(1u32),
            || format!("(i) <t{d} t{}>_{g}", 3 * g - 1 - d),
            || format!("no prime > {bound}"),
            || format!("cofactor {cofactor}"),
        );
        lcm.lcm_assign(&f);
        denominators.push(f);
    }

    for p in primes_up_to(bound).into_iter().filter(|&p| p > g as u64) {
        let d = ((p - 1) / 2) as usize;
        let ord = denominators[d].exponent(p);
        report.check(
            ord >= 1,
            || format!("(ii) {p} | denom <t{d} t{}>_{g}", 3 * g as usize - 1 - d),
            || "divides".into(),
            || "does not divide".into(),
        );
    }

    if is_prime(bound) {
        for (d, f) in denominators.iter().enumerate() {
            let divides = f.exponent(bound) >= 1;
            let predicted = (g as usize..=2 * g as usize - 1).contains(&d);
            report.check(
                divides == predicted,
                || format!("(iii) {bound} | denom <t{d} t{}>_{g}", 3 * g as usize - 1 - d),
                || predicted.to_string(),
                || divides.to_string(),
            );
        }
        let ord = lcm.exponent(bound);
        report.check(
            ord == 1,
            || format!("(iv) ord({bound}, D_{{{g},2}})"),
            || "1".into(),
            || ord.to_string(),
        );
    }
    Ok(report)
}

/// `ord(p, D_{g,3}) >= 2` for every prime `p <= g+1`.
pub fn verify_small_primes_in_d3(g: u32, d3: &PrimeFactorization) -> Result<VerificationReport> {
    check_genus(g)?;
    let mut report = VerificationReport::new(format!("ordlemma g={g}"), "primes");
    for p in primes_up_to(g as u64 + 1) {
        let ord = d3.exponent(p);
        report.check(
            ord >= 2,
            || format!("ord({p}, D_{{{g},3}})"),
            || ">= 2".into(),
            || ord.to_string(),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn f(s: &str) -> PrimeFactorization {
        s.parse().unwrap()
    }

    #[test]
    fn base_values() {
        let ev = Evaluator::<Q>::new();
        for n in 3..=5 {
            assert_eq!(d_gn(&ev, 0, n).unwrap(), PrimeFactorization::one());
        }
        for n in 1..=3 {
            assert_eq!(d_gn(&ev, 1, n).unwrap(), f("2^3*3"));
        }
        assert_eq!(d_gn(&ev, 3, 1).unwrap().to_u64(), Some(82944));
        assert!(d_gn(&ev, 0, 2).is_err());
        assert!(d_gn(&ev, 1, 0).is_err());
    }

    #[test]
    fn script_d_low_genus() {
        let ev = Evaluator::<Q>::new();
        assert_eq!(script_d(&ev, 2).unwrap(), f("2^7*3^2*5"));
        assert_eq!(script_d(&ev, 3).unwrap(), f("2^10*3^4*5*7"));
        assert!(script_d(&ev, 1).is_err());
    }

    #[test]
    fn tilde_d_matches() {
        let ev = Evaluator::<Q>::new();
        let kev = KappaEvaluator::new(&ev);
        assert_eq!(tilde_d(&kev, 2).unwrap(), f("2^7*3^2*5"));
        assert_eq!(tilde_d(&kev, 2).unwrap(), d_gn(&ev, 2, 3).unwrap());
        assert!(tilde_d(&kev, 1).is_err());
    }

    #[test]
    fn verifiers_pass_on_small_genus() {
        let ev = Evaluator::<Q>::new();
        assert!(verify_divisibility_chain(&ev, 1, 3).unwrap().pass);
        assert!(verify_divisibility_chain(&ev, 0, 5).unwrap().pass);
        let chain = verify_divisibility_chain(&ev, 2, 3).unwrap();
        assert!(chain.pass);
        assert_eq!(chain.instances, 2);
        let c = verify_prime_orders(&ev, 2).unwrap();
        assert!(c.pass);
        assert_eq!(c.to_string(), "conj25 g=2: pass (3 primes checked)");
        assert!(verify_prime_factors(&ev, 2).unwrap().pass);
        assert!(verify_prime_factors(&ev, 3).unwrap().pass);
        assert!(verify_two_point_denominators::<Q>(2).unwrap().pass);
        assert!(verify_two_point_denominators::<Q>(3).unwrap().pass);
        assert!(verify_small_primes_in_d3(2, &d_gn(&ev, 2, 3).unwrap()).unwrap().pass);
    }

    #[test]
    fn prime_factor_check_flags_bad_factorizations() {
        // 7 exceeds 2g+1 = 5 and ord(2) is off
        let r = check_prime_factors(&f("2^6*3^2*5*7"), 2).unwrap();
        assert!(!r.pass);
        assert_eq!(r.witnesses.len(), 2);
        // 5 missing
        let r = check_prime_factors(&f("2^7*3^2"), 2).unwrap();
        assert_eq!(r.witnesses.len(), 2, "{r}");
    }

    #[test]
    fn large_prime_in_denominator_is_an_error() {
        let v = Q::new(1.into(), 7.into());
        assert!(matches!(
            denominator_factorization(&v, 2),
            Err(Error::UnexpectedPrime { genus: 2, bound: 5, .. })
        ));
        assert_eq!(denominator_factorization(&v, 3).unwrap(), f("7"));
    }

    #[test]
    fn small_primes_check_uses_given_factorization() {
        let d11 = f("2^41*3^15*5^3*7^2*11^2*13*17*19*23");
        let r = verify_small_primes_in_d3(11, &d11).unwrap();
        assert!(r.pass);
        assert_eq!(r.instances, 5);
        assert!(!verify_small_primes_in_d3(4, &f("2^9*3^4*5")).unwrap().pass);
    }
}
