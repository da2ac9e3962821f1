use crate::error::{domain, precondition, Result};
use crate::scalar::{factorial, scalar_quotient, Scalar};

use super::spec::TauSpec;

/// `<tau_{d_1} ... tau_{d_n}>_0 = (n-3)! / prod d_i!`.
pub fn genus0_closed_form<S: Scalar>(exponents: &[u32]) -> Result<S> {
    let n = exponents.len();
    if n < 3 {
        return Err(domain(format!("genus 0 needs at least 3 points, got {n}")));
    }
    let degree: u64 = exponents.iter().map(|&d| d as u64).sum();
    if degree != n as u64 - 3 {
        return Err(domain(format!("genus 0 degree {degree} != n - 3 = {}", n - 3)));
    }
    let denom = exponents
        .iter()
        .fold(num_bigint::BigUint::from(1u32), |acc, &d| acc * factorial(d as u64));
    Ok(scalar_quotient(&factorial(n as u64 - 3), &denom))
}

/// String equation: drops one `tau_0` and lowers each remaining exponent in
/// turn. Terms that would need `tau_{-1}` vanish and are not returned; an
/// exponent value that occurs `m` times yields `m` equal entries.
pub fn string_reduce(spec: &TauSpec) -> Result<Vec<TauSpec>> {
    if spec.n() < 2 {
        return Err(precondition(format!("string equation needs n >= 2 in {spec}")));
    }
    let rest = spec
        .without(0)
        .ok_or_else(|| precondition(format!("no tau_0 in {spec}")))?;
    Ok(rest
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d >= 1)
        .map(|(j, &d)| rest.replaced(j, d - 1))
        .collect())
}

/// Dilaton equation: `<tau_1 X>_g = (2g - 2 + |X|) <X>_g`.
pub fn dilaton_reduce<S: Scalar>(spec: &TauSpec) -> Result<(S, TauSpec)> {
    let rest = spec
        .without(1)
        .ok_or_else(|| precondition(format!("no tau_1 in {spec}")))?;
    if !rest.is_stable() {
        return Err(precondition(format!(
            "removing tau_1 from {spec} leaves an unstable space"
        )));
    }
    let factor = 2 * spec.genus() as u64 + rest.n() as u64 - 2;
    Ok((S::from_u64(factor), rest))
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
    fn genus0_values() {
        assert_eq!(genus0_closed_form::<Q>(&[0, 0, 0]).unwrap(), q(1, 1));
        assert_eq!(genus0_closed_form::<Q>(&[0, 0, 0, 1]).unwrap(), q(1, 1));
        assert_eq!(genus0_closed_form::<Q>(&[0, 0, 0, 1, 1]).unwrap(), q(2, 1));
        assert_eq!(genus0_closed_form::<Q>(&[0, 0, 0, 0, 0, 3]).unwrap(), q(1, 1));
        assert!(genus0_closed_form::<Q>(&[0, 0]).is_err());
        assert!(genus0_closed_form::<Q>(&[0, 0, 1]).is_err());
    }

    #[test]
    fn string_examples() {
        assert_eq!(
            string_reduce(&TauSpec::new(1, vec![0, 2])).unwrap(),
            vec![TauSpec::new(1, vec![1])]
        );
        assert_eq!(
            string_reduce(&TauSpec::new(1, vec![0, 1, 2])).unwrap(),
            vec![TauSpec::new(1, vec![0, 2]), TauSpec::new(1, vec![1, 1])]
        );
        assert_eq!(
            string_reduce(&TauSpec::new(0, vec![0, 0, 0, 1])).unwrap(),
            vec![TauSpec::new(0, vec![0, 0, 0])]
        );
        assert!(string_reduce(&TauSpec::new(1, vec![1, 1])).is_err());
        assert!(string_reduce(&TauSpec::new(1, vec![0])).is_err());
    }

    #[test]
    fn string_keeps_multiplicity() {
        let terms = string_reduce(&TauSpec::new(2, vec![0, 3, 3])).unwrap();
        assert_eq!(terms, vec![TauSpec::new(2, vec![2, 3]), TauSpec::new(2, vec![2, 3])]);
    }

    #[test]
    fn dilaton_examples() {
        let (f, s) = dilaton_reduce::<Q>(&TauSpec::new(1, vec![1, 1])).unwrap();
        assert_eq!((f, s), (q(1, 1), TauSpec::new(1, vec![1])));
        let (f, s) = dilaton_reduce::<Q>(&TauSpec::new(2, vec![1, 4])).unwrap();
        assert_eq!((f, s), (q(3, 1), TauSpec::new(2, vec![4])));
        assert!(dilaton_reduce::<Q>(&TauSpec::new(1, vec![1])).is_err());
        assert!(dilaton_reduce::<Q>(&TauSpec::new(2, vec![4])).is_err());
    }
}
