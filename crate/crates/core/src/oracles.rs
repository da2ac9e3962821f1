//! Closed-form 2-point and special 3-point intersection numbers.
//!
//! These are computed without the DVV recursion and serve as independent
//! checks on [`Evaluator`](crate::tau::Evaluator).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{domain, Result};
use crate::report::VerificationReport;
use crate::scalar::{binomial, double_factorial, factorial, scalar_quotient, Scalar};
use crate::tau::{Evaluator, TauSpec};

/// Truncated power series in two variables with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<S> {
    coefficients: BTreeMap<(u32, u32), S>,
    order: u32,
}

impl<S: Scalar> BivariateSeries<S> {
    /// Coefficient of `x1^i x2^j`, or `None` beyond the truncation order.
    pub fn coefficient(&self, i: u32, j: u32) -> Option<S> {
        if i + j > self.order {
            return None;
        }
        Some(self.coefficients.get(&(i, j)).cloned().unwrap_or_else(S::zero))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Non-zero coefficients, keyed by exponent pair.
    pub fn nonzero(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.coefficients.iter()
    }
}

// Dense polynomial in x1, x2 stored by homogeneous degree; parts[d][i] is the
// coefficient of x1^i x2^(d-i).
struct Homogeneous<S> {
    parts: Vec<Vec<S>>,
}

impl<S: Scalar> Homogeneous<S> {
    fn zero(max_degree: usize) -> Self {
        Homogeneous {
            parts: (0..=max_degree).map(|d| vec![S::zero(); d + 1]).collect(),
        }
    }

    fn max_degree(&self) -> usize {
        self.parts.len() - 1
    }

    fn mul(&self, other: &Self) -> Self {
        let top = self.max_degree();
        let mut out = Self::zero(top);
        for (da, pa) in self.parts.iter().enumerate() {
            for (db, pb) in other.parts.iter().enumerate().take(top - da + 1) {
                for (i, a) in pa.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in pb.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let slot = &mut out.parts[da + db][i + j];
                        *slot = slot.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    fn add_scaled(&mut self, other: &Self, c: &S) {
        for (pa, pb) in self.parts.iter_mut().zip(&other.parts) {
            for (a, b) in pa.iter_mut().zip(pb) {
                *a = a.clone() + c.clone() * b.clone();
            }
        }
    }
}

/// Dijkgraaf's closed form of the 2-point function, expanded up to total
/// degree `max_total_degree`.
///
/// The series is `(1/(x1+x2)) exp((x1^3+x2^3)/24) sum_k k!/(2k+1)! (x1 x2 (x1+x2)/2)^k`.
/// The product of the last two factors has constant term 1 and everything
/// else divisible by `x1 + x2`; the lone `1/(x1+x2)` is the unstable genus-0
/// contribution and is dropped. Panics if any other term fails to divide,
/// which would mean a non-polynomial term survived.
pub fn dijkgraaf_two_point_series<S: Scalar>(max_total_degree: u32) -> BivariateSeries<S> {
    let top = max_total_degree as usize + 1;

    // (x1^3 + x2^3) / 24 and x1 x2 (x1 + x2) / 2
    let mut cubes = Homogeneous::<S>::zero(top);
    let mut mixed = Homogeneous::<S>::zero(top);
    if top >= 3 {
        cubes.parts[3][0] = S::from_ratio(1, 24);
        cubes.parts[3][3] = S::from_ratio(1, 24);
        mixed.parts[3][1] = S::from_ratio(1, 2);
        mixed.parts[3][2] = S::from_ratio(1, 2);
    }

    let mut one = Homogeneous::<S>::zero(top);
    one.parts[0][0] = S::one();

    // exp(cubes) = sum_m cubes^m / m!
    let mut exp = Homogeneous::<S>::zero(top);
    let mut power = Homogeneous::<S>::zero(top);
    power.parts[0][0] = S::one();
    for m in 0..=top / 3 {
        exp.add_scaled(&power, &scalar_quotient(&BigUint::one(), &factorial(m as u64)));
        power = power.mul(&cubes);
    }

    // sum_k k!/(2k+1)! mixed^k
    let mut ksum = Homogeneous::<S>::zero(top);
    let mut power = one;
    for k in 0..=top / 3 {
        ksum.add_scaled(
            &power,
            &scalar_quotient(&factorial(k as u64), &factorial(2 * k as u64 + 1)),
        );
        power = power.mul(&mixed);
    }

    let product = exp.mul(&ksum);
    assert!(product.parts[0][0] == S::one(), "constant term of (x1+x2)F must be 1");

    let mut coefficients = BTreeMap::new();
    for (d, p) in product.parts.iter().enumerate().skip(1) {
        // p = (x1 + x2) q with q homogeneous of degree d - 1
        let mut q: Vec<S> = Vec::with_capacity(d);
        let mut prev = S::zero();
        for pi in p.iter().take(d) {
            let qi = pi.clone() - prev;
            q.push(qi.clone());
            prev = qi;
        }
        assert!(prev == p[d], "degree {d} part of (x1+x2)F is not divisible by x1+x2");
        for (i, c) in q.into_iter().enumerate() {
            if !c.is_zero() {
                let j = d - 1 - i;
                coefficients.insert((i as u32, j as u32), c);
            }
        }
    }
    BivariateSeries {
        coefficients,
        order: max_total_degree,
    }
}

/// Truncation order sufficient for every 2-point correlator up to genus `g_max`.
pub fn two_point_order(g_max: u32) -> u32 {
    3 * g_max + 1
}

/// Closed double sum for `<tau_d tau_{3g-1-d}>_g` read off the 2-point
/// function, with the `k` range `max((d-3i+1)/2, 1) <= k <= min(g-i, d-3i)`.
pub fn two_point_coefficient_formula<S: Scalar>(g: u32, d: u32) -> Result<S> {
    if g < 1 {
        return Err(domain("2-point formula needs g >= 1"));
    }
    if d > 3 * g - 1 {
        return Err(domain(format!("d = {d} outside 0..={}", 3 * g - 1)));
    }
    let (g, d) = (g as i64, d as i64);
    let mut total = S::zero();
    for i in 0..=g {
        let k_min = (d - 3 * i + 2).div_euclid(2).max(1);
        let k_max = (g - i).min(d - 3 * i);
        for k in k_min..=k_max {
            let numer = binomial(g - k, i) * binomial(k - 1, d - 3 * i - k) * factorial(k as u64);
            let denom = factorial((g - k) as u64)
                * BigUint::from(24u32).pow((g - k) as u32)
                * factorial(2 * k as u64 + 1)
                * BigUint::from(2u32).pow(k as u32);
            total = total + scalar_quotient::<S>(&numer, &denom);
        }
    }
    let tail = scalar_quotient::<S>(
        &binomial(g - 1, d / 3),
        &(factorial(g as u64) * BigUint::from(24u32).pow(g as u32)),
    );
    if d % 3 == 1 {
        total = total - tail;
    } else {
        total = total + tail;
    }
    Ok(total)
}

/// Coefficient of `x^{3g-2b} y^{2b}` in `F_g(x, y, -y)` from Faber's closed
/// sum over `a + b + c = g`, `b >= a`. Zero when no `(a, c)` is admissible.
pub fn faber_three_point_special<S: Scalar>(g: u32, b: u32) -> S {
    let mut total = S::zero();
    if b > g {
        return total;
    }
    for a in 0..=b.min(g - b) {
        let c = g - b - a;
        let numer = factorial((a + b) as u64);
        let denom = BigUint::from(4u32).pow(a + b)
            * BigUint::from(24u32).pow(c)
            * double_factorial(2 * (a + b) as i64 + 1)
            * factorial((b - a) as u64)
            * factorial(2 * a as u64 + 1)
            * factorial(c as u64);
        total = total + scalar_quotient::<S>(&numer, &denom);
    }
    total
}

/// `sum_{j=0}^{2b} (-1)^j <tau_{3g-2b} tau_j tau_{2b-j}>_g` through the
/// evaluator.
pub fn faber_alternating_sum<S: Scalar>(ev: &Evaluator<S>, g: u32, b: u32) -> S {
    let mut total = S::zero();
    if 2 * b > 3 * g {
        return total;
    }
    for j in 0..=2 * b {
        let v = ev.value(&TauSpec::new(g, vec![3 * g - 2 * b, j, 2 * b - j]));
        total = if j % 2 == 0 { total + v } else { total - v };
    }
    total
}

/// Checks DVV = series = closed sum on every 2-point correlator with `1 <= g <= g_max`.
pub fn verify_two_point_oracles<S: Scalar>(ev: &Evaluator<S>, g_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new(format!("two-point oracles g<={g_max}"), "correlators");
    let series = dijkgraaf_two_point_series::<S>(two_point_order(g_max));
    for g in 1..=g_max {
        for d in 0..=3 * g - 1 {
            let e = 3 * g - 1 - d;
            let spec = TauSpec::new(g, vec![d, e]);
            let dvv = ev.value(&spec);
            let from_series = series.coefficient(d, e).expect("within truncation");
            let from_formula = two_point_coefficient_formula::<S>(g, d).expect("d in range");
            let agree = dvv == from_series && dvv == from_formula;
            report.check(
                agree,
                || format!("<t{d} t{e}>_{g}"),
                || format!("{dvv} (DVV)"),
                || format!("series {from_series}, closed sum {from_formula}"),
            );
        }
    }
    report
}

/// Checks Faber's special 3-point identity for `1 <= g <= g_max` and every
/// `b` with `2b <= 3g`; for `b > g` the closed sum is empty and the
/// alternating sum must vanish.
pub fn verify_faber_identity<S: Scalar>(ev: &Evaluator<S>, g_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new(format!("Faber 3-point identity g<={g_max}"), "coefficients");
    for g in 1..=g_max {
        for b in 0..=(3 * g) / 2 {
            let closed = faber_three_point_special::<S>(g, b);
            let alternating = faber_alternating_sum(ev, g, b);
            report.check(
                closed == alternating,
                || format!("g={g} b={b}"),
                || closed.to_string(),
                || alternating.to_string(),
            );
        }
    }
    report
}
