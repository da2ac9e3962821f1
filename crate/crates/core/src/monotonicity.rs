//! Smoothing monotonicity: moving one unit from a larger exponent to a
//! smaller one never decreases a correlator,
//!
//! ```text
//! <tau_{d_i} tau_{d_j} ...>_g <= <tau_{d_i+1} tau_{d_j-1} ...>_g   for d_i < d_j.
//! ```
//!
//! By the string and dilaton equations it suffices to check `n <= 3g-1` with
//! every exponent beyond the two smallest at least 2.

use rayon::prelude::*;

use crate::error::{domain, precondition, Result};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::tau::{enumerate_specs, Evaluator, TauSpec};

/// Largest `n` in the genus-0 sweep, where the reduced set is empty.
pub const GENUS0_MAX_N: usize = 9;

/// Compares the correlator with exponents `d` against the one with
/// `d_i + 1, d_j - 1`. Indices refer to `exponents` as given.
pub fn check_monotone_instance<S: Scalar>(
    ev: &Evaluator<S>,
    genus: u32,
    exponents: &[u32],
    i: usize,
    j: usize,
) -> Result<bool> {
    let n = exponents.len();
    if i >= n || j >= n || i == j {
        return Err(domain(format!("indices ({i}, {j}) invalid for {n} exponents")));
    }
    let (di, dj) = (exponents[i], exponents[j]);
    if di >= dj {
        return Err(precondition(format!("need d_i < d_j, got ({di}, {dj})")));
    }
    let before = TauSpec::new(genus, exponents.to_vec());
    let mut smoothed = exponents.to_vec();
    smoothed[i] += 1;
    smoothed[j] -= 1;
    let after = TauSpec::new(genus, smoothed);
    Ok(ev.intersection(&before)? <= ev.intersection(&after)?)
}

/// The specs swept at genus `g`.
///
/// Reduced: `n <= 3g-1`, sorted exponents beyond the first two `>= 2`.
/// Unreduced: every stable `n <= 3g+1`. Genus 0 has an empty reduced set,
/// so both modes fall back to all `3 <= n <= GENUS0_MAX_N`.
pub fn monotonicity_specs(g: u32, reduced: bool) -> Vec<TauSpec> {
    let n_min = (3 - 2 * g as i64).max(1) as usize;
    if g == 0 {
        return (n_min..=GENUS0_MAX_N).flat_map(|n| enumerate_specs(0, n, 0)).collect();
    }
    let n_max = if reduced {
        3 * g as usize - 1
    } else {
        3 * g as usize + 1
    };
    (n_min..=n_max)
        .flat_map(|n| enumerate_specs(g, n, 0))
        .filter(|s| !reduced || s.exponents().iter().skip(2).all(|&d| d >= 2))
        .collect()
}

/// Outcome of a sweep, with ties counted separately from strict increases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicitySweep {
    pub report: VerificationReport,
    pub equalities: u64,
}

/// Checks every pair of distinct exponent values `d_i < d_j - 1` in every spec.
pub fn sweep_monotonicity<S: Scalar>(ev: &Evaluator<S>, specs: &[TauSpec], claim: String) -> Result<MonotonicitySweep> {
    let per_spec = specs
        .par_iter()
        .map(|spec| {
            let mut values: Vec<u32> = spec.exponents().to_vec();
            values.dedup();
            let before = ev.intersection(spec)?;
            let mut out = Vec::new();
            for (a, &di) in values.iter().enumerate() {
                for &dj in &values[a + 1..] {
                    // dj == di + 1 just swaps the pair
                    if dj < di + 2 {
                        continue;
                    }
                    let mut smoothed = spec.exponents().to_vec();
                    let i = smoothed.iter().position(|&d| d == di).expect("present");
                    let j = smoothed.iter().position(|&d| d == dj).expect("present");
                    smoothed[i] += 1;
                    smoothed[j] -= 1;
                    let after = ev.intersection(&TauSpec::new(spec.genus(), smoothed))?;
                    out.push((di, dj, before.clone(), after));
                }
            }
            Ok((spec, out))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerificationReport::new(claim, "pairs");
    let mut equalities = 0;
    for (spec, checks) in per_spec {
        for (di, dj, before, after) in checks {
            if before == after {
                equalities += 1;
            }
            report.check(
                before <= after,
                || format!("{spec} smoothing ({di}, {dj})"),
                || format!(">= {before}"),
                || after.to_string(),
            );
        }
    }
    Ok(MonotonicitySweep { report, equalities })
}

/// The reduced sweep at genus `g`.
pub fn verify_monotonicity<S: Scalar>(ev: &Evaluator<S>, g: u32) -> Result<VerificationReport> {
    Ok(verify_monotonicity_detailed(ev, g, true)?.report)
}

pub fn verify_monotonicity_detailed<S: Scalar>(ev: &Evaluator<S>, g: u32, reduced: bool) -> Result<MonotonicitySweep> {
    let mode = if reduced { "" } else { " unreduced" };
    sweep_monotonicity(ev, &monotonicity_specs(g, reduced), format!("monotone g={g}{mode}"))
}
