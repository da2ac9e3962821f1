use crate::error::{domain, Result};
use crate::scalar::{scalar_from_biguint, Scalar};

use super::dvv::raw_expansion;
use super::memo::Memo;
use super::reduce::{dilaton_reduce, genus0_closed_form, string_reduce};
use super::spec::TauSpec;

/// Order in which the reductions are tried before falling back to DVV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// String, then dilaton, then DVV; genus 0 by closed form.
    #[default]
    StringFirst,
    /// Dilaton, then string, then DVV; genus 0 by closed form.
    DilatonFirst,
    /// DVV for everything except the seeds `<t0 t0 t0>_0 = 1` and `<t1>_1 = 1/24`.
    DvvOnly,
}

pub type TauMemo<S> = Memo<TauSpec, S>;

/// Memoizing evaluator of `<tau_{d_1} ... tau_{d_n}>_g`.
///
/// Safe to share between threads; evaluation is a pure function of the spec,
/// so concurrent callers always observe identical values.
#[derive(Debug)]
pub struct Evaluator<S> {
    memo: TauMemo<S>,
    strategy: Strategy,
}

impl<S: Scalar> Evaluator<S> {
    pub fn new() -> Self {
        Self::with_strategy(Strategy::default())
    }

    pub fn with_strategy(strategy: Strategy) -> Self {
        Evaluator {
            memo: Memo::new(),
            strategy,
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn memo(&self) -> &TauMemo<S> {
        &self.memo
    }

    /// Exact value of a dimension-valid correlator.
    pub fn intersection(&self, spec: &TauSpec) -> Result<S> {
        if !spec.is_dimension_valid() {
            return Err(domain(format!(
                "{spec} is not a dimension-valid correlator (need 2g-2+n >= 1 and sum = 3g-3+n)"
            )));
        }
        Ok(self.value(spec))
    }

    /// Evaluates `spec` through a single DVV expansion at `pivot`; the
    /// resulting lower correlators go through the regular evaluator.
    pub fn intersection_via_pivot(&self, spec: &TauSpec, pivot: usize) -> Result<S> {
        let raw = raw_expansion(spec, pivot)?;
        Ok(self.sum_raw(raw))
    }

    /// Value of any spec; unstable or wrong-degree correlators are zero.
    pub(crate) fn value(&self, spec: &TauSpec) -> S {
        if !spec.is_dimension_valid() {
            return S::zero();
        }
        if let Some(v) = self.memo.get(spec) {
            return v;
        }
        let v = self.compute(spec);
        self.memo.insert(spec.clone(), v)
    }

    fn compute(&self, spec: &TauSpec) -> S {
        let g = spec.genus();
        let e = spec.exponents();
        if g == 1 && e == [1] {
            return S::from_ratio(1, 24);
        }
        if self.strategy == Strategy::DvvOnly {
            if g == 0 && e == [0, 0, 0] {
                return S::one();
            }
            return self.dvv_largest(spec);
        }
        if g == 0 {
            return genus0_closed_form(e).expect("dimension-valid genus 0 spec");
        }
        let reduced = match self.strategy {
            Strategy::StringFirst => self.try_string(spec).or_else(|| self.try_dilaton(spec)),
            Strategy::DilatonFirst => self.try_dilaton(spec).or_else(|| self.try_string(spec)),
            Strategy::DvvOnly => unreachable!(),
        };
        reduced.unwrap_or_else(|| self.dvv_largest(spec))
    }

    fn try_string(&self, spec: &TauSpec) -> Option<S> {
        let terms = string_reduce(spec).ok()?;
        Some(terms.iter().fold(S::zero(), |acc, t| acc + self.value(t)))
    }

    fn try_dilaton(&self, spec: &TauSpec) -> Option<S> {
        let (factor, rest) = dilaton_reduce::<S>(spec).ok()?;
        Some(factor * self.value(&rest))
    }

    fn dvv_largest(&self, spec: &TauSpec) -> S {
        let pivot = spec.n() - 1;
        let raw = raw_expansion(spec, pivot).expect("largest exponent of a dimension-valid spec is positive");
        self.sum_raw(raw)
    }

    fn sum_raw(&self, raw: super::dvv::RawExpansion) -> S {
        let mut total = S::zero();
        for (weight, factors) in &raw.terms {
            let mut product = scalar_from_biguint::<S>(weight);
            for f in factors {
                product = product * self.value(f);
            }
            total = total + product;
        }
        total / scalar_from_biguint::<S>(&raw.denominator)
    }
}

impl<S: Scalar> Default for Evaluator<S> {
    fn default() -> Self {
        Self::new()
    }
}
