use num_bigint::BigUint;
use num_traits::One;

use crate::error::{precondition, Result};
use crate::scalar::{binomial, double_factorial, scalar_quotient, Scalar};

use super::spec::TauSpec;

/// One summand of a DVV expansion: `coefficient * prod <factor>`.
///
/// Lowering terms (the `j`-sum and the genus-reduction sum) have a single
/// factor; splitting terms have two.
#[derive(Debug, Clone, PartialEq)]
pub struct DvvTerm<S> {
    pub coefficient: S,
    pub factors: Vec<TauSpec>,
}

/// Right-hand side of the DVV recursion for a spec with one index singled
/// out as `tau_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DvvExpansion<S> {
    pub pivot: usize,
    pub terms: Vec<DvvTerm<S>>,
}

/// Integer-weighted terms over a shared denominator `2 (2k+3)!!`.
pub(crate) struct RawExpansion {
    pub terms: Vec<(BigUint, Vec<TauSpec>)>,
    pub denominator: BigUint,
}

// Distinct values of a sorted slice with their multiplicities.
fn runs(sorted: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &d in sorted {
        match out.last_mut() {
            Some((v, m)) if *v == d => *m += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

fn merged(base: &[u32], extra: &[u32]) -> Vec<u32> {
    let mut v = Vec::with_capacity(base.len() + extra.len());
    v.extend_from_slice(base);
    v.extend_from_slice(extra);
    v.sort_unstable();
    v
}

pub(crate) fn raw_expansion(spec: &TauSpec, pivot: usize) -> Result<RawExpansion> {
    let exps = spec.exponents();
    let Some(&top) = exps.get(pivot) else {
        return Err(precondition(format!("pivot {pivot} out of range for {spec}")));
    };
    if top == 0 {
        return Err(precondition(format!("pivot exponent of {spec} is 0")));
    }
    if !spec.is_dimension_valid() {
        return Err(precondition(format!("{spec} is not dimension-valid")));
    }
    let g = spec.genus();
    let k = top as i64 - 1;
    let mut rest = exps.to_vec();
    rest.remove(pivot);
    let rest_runs = runs(&rest);
    let odd_df = |m: i64| double_factorial(2 * m + 1);

    let mut terms: Vec<(BigUint, Vec<TauSpec>)> = Vec::new();

    // Lowering terms; each carries weight 2 because of the shared 1/2.
    let mut offset = 0;
    for &(d, mult) in &rest_runs {
        let mut lowered = rest.clone();
        lowered[offset] = d + k as u32;
        let child = TauSpec::new(g, lowered);
        offset += mult;
        if !child.is_stable() {
            continue;
        }
        let weight = double_factorial(2 * k + 2 * d as i64 + 1) / double_factorial(2 * d as i64 - 1);
        terms.push((weight * 2u32 * mult as u32, vec![child]));
    }

    // Genus reduction, r + s = k - 1, folding (r, s) with (s, r).
    if g >= 1 && k >= 1 {
        for r in 0..=(k - 1) / 2 {
            let s = k - 1 - r;
            let child = TauSpec::new(g - 1, merged(&rest, &[r as u32, s as u32]));
            if !child.is_stable() {
                continue;
            }
            let mut weight = odd_df(r) * odd_df(s);
            if r != s {
                weight *= 2u32;
            }
            terms.push((weight, vec![child]));
        }
    }

    // Splitting over ordered I ⊔ J of the remaining points and r + s = k - 1.
    if k >= 1 {
        let mut counts = vec![0usize; rest_runs.len()];
        loop {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut mult = BigUint::one();
            for (&(d, m), &c) in rest_runs.iter().zip(&counts) {
                left.extend(std::iter::repeat_n(d, c));
                right.extend(std::iter::repeat_n(d, m - c));
                mult *= binomial(m as i64, c as i64);
            }
            let left_degree: i64 = left.iter().map(|&d| d as i64).sum();
            for r in 0..=k - 1 {
                let s = k - 1 - r;
                // r + sum(I) = 3g' - 3 + |I| + 1 determines g'.
                let three_g = r + left_degree - left.len() as i64 + 2;
                if three_g < 0 || three_g % 3 != 0 || three_g / 3 > g as i64 {
                    continue;
                }
                let g_left = (three_g / 3) as u32;
                let a = TauSpec::new(g_left, merged(&left, &[r as u32]));
                let b = TauSpec::new(g - g_left, merged(&right, &[s as u32]));
                if !a.is_stable() || !b.is_stable() {
                    continue;
                }
                debug_assert!(a.is_dimension_valid() && b.is_dimension_valid());
                terms.push((odd_df(r) * odd_df(s) * &mult, vec![a, b]));
            }
            // next sub-multiset
            let mut i = 0;
            while i < counts.len() && counts[i] == rest_runs[i].1 {
                counts[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                break;
            }
            counts[i] += 1;
        }
    }

    Ok(RawExpansion {
        terms,
        denominator: odd_df(k + 1) * 2u32,
    })
}

/// Expands `spec` by the DVV recursion with the exponent at `pivot` playing
/// the role of `tau_{k+1}`.
///
/// Terms whose correlator lives on an unstable space are omitted. Equal
/// terms arising from symmetric choices are folded into one coefficient.
pub fn dvv_expand<S: Scalar>(spec: &TauSpec, pivot: usize) -> Result<DvvExpansion<S>> {
    let raw = raw_expansion(spec, pivot)?;
    let terms = raw
        .terms
        .into_iter()
        .map(|(w, factors)| DvvTerm {
            coefficient: scalar_quotient(&w, &raw.denominator),
            factors,
        })
        .collect();
    Ok(DvvExpansion { pivot, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn genus0_four_point() {
        let e = dvv_expand::<Q>(&TauSpec::new(0, vec![0, 0, 0, 1]), 3).unwrap();
        // three equal lowering terms, folded into one
        assert_eq!(
            e.terms,
            vec![DvvTerm {
                coefficient: q(1, 1),
                factors: vec![TauSpec::new(0, vec![0, 0, 0])]
            }]
        );
    }

    #[test]
    fn genus1_two_point() {
        let e = dvv_expand::<Q>(&TauSpec::new(1, vec![1, 1]), 0).unwrap();
        assert_eq!(
            e.terms,
            vec![DvvTerm {
                coefficient: q(1, 1),
                factors: vec![TauSpec::new(1, vec![1])]
            }]
        );
    }

    #[test]
    fn one_point_genus2_terms() {
        let e = dvv_expand::<Q>(&TauSpec::new(2, vec![4]), 0).unwrap();
        // (1/945) [ 1/2 (15 <t0 t2> + 9 <t1 t1> + 15 <t2 t0>) + 1/2 * 9 <t1><t1> ]
        let expected = vec![
            DvvTerm {
                coefficient: q(15, 945),
                factors: vec![TauSpec::new(1, vec![0, 2])],
            },
            DvvTerm {
                coefficient: q(9, 2 * 945),
                factors: vec![TauSpec::new(1, vec![1, 1])],
            },
            DvvTerm {
                coefficient: q(9, 2 * 945),
                factors: vec![TauSpec::new(1, vec![1]), TauSpec::new(1, vec![1])],
            },
        ];
        assert_eq!(e.terms, expected);
    }

    #[test]
    fn zero_pivot_rejected() {
        assert!(dvv_expand::<Q>(&TauSpec::new(0, vec![0, 0, 0]), 0).is_err());
        assert!(dvv_expand::<Q>(&TauSpec::new(1, vec![0, 2]), 0).is_err());
        assert!(dvv_expand::<Q>(&TauSpec::new(1, vec![0, 2]), 5).is_err());
        assert!(dvv_expand::<Q>(&TauSpec::new(1, vec![0, 0, 2]), 2).is_err());
    }
}
