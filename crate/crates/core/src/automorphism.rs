//! Numeric bounds on automorphism groups of Riemann surfaces and stable
//! curves, and the check that they divide `D_{g,3}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::denominators::d_gn;
use crate::error::{domain, Result};
use crate::primes::{is_prime, ord_u64, primes_up_to, PrimeFactorization};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::tau::Evaluator;

fn check_genus(g: u32) -> Result<()> {
    if g >= 2 {
        Ok(())
    } else {
        Err(domain(format!("need g >= 2, got {g}")))
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(domain(format!("{p} is not prime")))
    }
}

// No prime above 2g+1 divides the order of an automorphism group in genus g.
pub(crate) fn prime_bound(g: u32) -> u64 {
    2 * g as u64 + 1
}

/// `84(g - 1)`.
pub fn hurwitz_bound(g: u32) -> Result<u64> {
    check_genus(g)?;
    Ok(84 * (g as u64 - 1))
}

/// The largest prime that can divide `|Aut|` of a stable curve of genus `g`.
pub fn stable_prime_bound(g: u32) -> Result<u64> {
    check_genus(g)?;
    Ok(prime_bound(g))
}

/// A group `G` acting on a genus-`g` surface with quotient of genus `g0`
/// and branch orders `n_1, ..., n_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingDatum {
    pub genus: u32,
    pub quotient_genus: u32,
    pub branch_orders: Vec<u64>,
    pub group_order: u64,
}

/// Riemann-Hurwitz in exact arithmetic, plus `|G| | (2g-2) * lcm(n_i)`.
pub fn validate_branching_datum(d: &BranchingDatum) -> bool {
    if d.genus < 2 || d.group_order == 0 || d.branch_orders.iter().any(|&n| n < 2) {
        return false;
    }
    let int = |n: u64| BigRational::from_integer(BigInt::from(n));
    let mut orbifold = int(2 * d.quotient_genus as u64) - int(2);
    for &n in &d.branch_orders {
        orbifold += BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(n));
    }
    let euler = int(2 * d.genus as u64 - 2);
    if euler != int(d.group_order) * orbifold {
        return false;
    }
    let lcm = d
        .branch_orders
        .iter()
        .fold(BigInt::one(), |acc, &n| acc.lcm(&BigInt::from(n)));
    (BigInt::from(2 * d.genus as u64 - 2) * lcm % BigInt::from(d.group_order)).is_zero()
}

/// Smallest genus `>= 2` with an automorphism of order `p^r`: `max(2, (p-1) p^(r-1) / 2)`.
pub fn harvey_min_genus(p: u64, r: u32) -> Result<u64> {
    check_prime(p)?;
    if r < 1 {
        return Err(domain("harvey_min_genus needs r >= 1"));
    }
    let v = (p - 1)
        .checked_mul(p.checked_pow(r - 1).ok_or_else(|| domain("p^(r-1) overflows"))?)
        .ok_or_else(|| domain("(p-1) p^(r-1) overflows"))?;
    Ok((v / 2).max(2))
}

/// `floor(log_p(2pg / (p-1)))`: the largest `k` with `p^k (p-1) <= 2pg`.
pub fn floor_log_term(p: u64, g: u32) -> Result<u32> {
    check_prime(p)?;
    let target = 2 * p as u128 * g as u128;
    let mut k = 0;
    let mut lhs = (p - 1) as u128;
    while lhs * p as u128 <= target {
        lhs *= p as u128;
        k += 1;
    }
    Ok(k)
}

/// Upper bound on `ord(p, |Aut(X)|)` for a genus-`g` Riemann surface.
pub fn prime_power_bound(p: u64, g: u32) -> Result<u32> {
    check_genus(g)?;
    Ok(floor_log_term(p, g)? + ord_u64(p, 2 * (g as u64 - 1))?)
}

/// Checks `prime_power_bound(p, g) <= ord(p, d3)` for every prime `p <= 2g+1`.
pub fn verify_aut_divides_d3(g: u32, d3: &PrimeFactorization) -> Result<VerificationReport> {
    check_genus(g)?;
    let mut report = VerificationReport::new(format!("autbound g={g}"), "primes");
    for p in primes_up_to(prime_bound(g)) {
        let bound = prime_power_bound(p, g)?;
        let ord = d3.ord(p)?;
        report.check(
            bound <= ord,
            || format!("p={p}"),
            || format!("ord >= {bound}"),
            || ord.to_string(),
        );
    }
    Ok(report)
}

/// The same check at every genus `2 <= g' <= g`, against computed `D(g', 3)`.
pub fn verify_aut_divides_d3_through<S: Scalar>(ev: &Evaluator<S>, g: u32) -> Result<VerificationReport> {
    check_genus(g)?;
    let mut report = VerificationReport::new(format!("autbound g<={g}"), "primes");
    for h in 2..=g {
        report = report.merge(verify_aut_divides_d3(h, &d_gn(ev, h, 3)?)?);
    }
    Ok(report)
}

/// A stable curve exceeding the Riemann-surface prime-order bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableCounterexample {
    /// Number of genus-`(p-1)/2` components glued to a central sphere.
    pub n: u64,
    /// Lower bound on `ord(p, |Aut|)` of the glued curve.
    pub ord_lower_bound: u32,
    /// Whether the lower bound beats `floor(2g / (p-1))`.
    pub exceeds: bool,
}

/// `n = floor(2g/(p-1))` components each carrying an order-`p` automorphism,
/// permuted cyclically around the sphere.
pub fn stable_counterexample(g: u32, p: u64) -> Result<StableCounterexample> {
    check_prime(p)?;
    if p < 5 {
        return Err(domain(format!("need p >= 5, got {p}")));
    }
    let n = 2 * g as u64 / (p - 1);
    if n < 3 {
        return Err(domain(format!("n = {n} points on the sphere is unstable")));
    }
    let ord_lower_bound = n as u32 + ord_u64(p, n)?;
    Ok(StableCounterexample {
        n,
        ord_lower_bound,
        exceeds: ord_lower_bound as u64 > n,
    })
}
