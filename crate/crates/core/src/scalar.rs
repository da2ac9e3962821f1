//! Exact scalar types.
//!
//! Every computation in this crate is carried out in an exact field. The
//! production type is [`BigRational`]; fixed-width rationals such as
//! `Ratio<i128>` also implement [`Scalar`] and are handy as an independent
//! arithmetic route for small genus, where nothing overflows.

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, BigUint, ToBigInt};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// An exact field element usable as an intersection-number value.
pub trait Scalar: Num + Clone + Debug + Display + PartialOrd + Send + Sync + 'static {
    /// Embeds an integer.
    ///
    /// Fixed-width implementations panic when the integer does not fit.
    fn from_bigint(n: &BigInt) -> Self;

    fn from_u64(n: u64) -> Self {
        Self::from_bigint(&BigInt::from(n))
    }

    fn from_ratio(numer: u64, denom: u64) -> Self {
        Self::from_u64(numer) / Self::from_u64(denom)
    }

    /// Lossless conversion to an arbitrary-precision rational.
    fn to_big_rational(&self) -> BigRational;

    /// Denominator of the reduced form, always positive.
    fn denominator(&self) -> BigUint {
        self.to_big_rational()
            .denom()
            .to_biguint()
            .expect("reduced denominators are positive")
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer
        + Signed
        + CheckedMul
        + CheckedAdd
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToBigInt
        + Send
        + Sync
        + 'static,
{
    fn from_bigint(n: &BigInt) -> Self {
        if let Some(v) = n.to_i64().and_then(T::from_i64) {
            return Ratio::from_integer(v);
        }
        // Horner over base-2^32 limbs; overflows (and panics) for fixed-width T.
        let overflow = || panic!("integer {n} does not fit the scalar type");
        let base = T::from_u64(1 << 32).unwrap_or_else(overflow);
        let (sign, limbs) = n.to_u32_digits();
        let mut acc = T::zero();
        for &limb in limbs.iter().rev() {
            let limb = T::from_u32(limb).unwrap_or_else(overflow);
            acc = acc
                .checked_mul(&base)
                .and_then(|a| a.checked_add(&limb))
                .unwrap_or_else(overflow);
        }
        if sign == num_bigint::Sign::Minus {
            acc = -acc;
        }
        Ratio::from_integer(acc)
    }

    fn from_u64(n: u64) -> Self {
        Ratio::from_integer(T::from_u64(n).unwrap_or_else(|| panic!("integer {n} does not fit the scalar type")))
    }

    fn to_big_rational(&self) -> BigRational {
        // Ratio<T> keeps itself reduced with a positive denominator, so this stays reduced.
        BigRational::new_raw(
            self.numer().to_bigint().expect("integer numerator"),
            self.denom().to_bigint().expect("integer denominator"),
        )
    }
}

/// `n!!` with the conventions `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigUint {
    assert!(n >= -1, "double factorial of {n} is undefined");
    let mut acc = BigUint::one();
    let mut k = n;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn scalar_from_biguint<S: Scalar>(n: &BigUint) -> S {
    S::from_bigint(&BigInt::from(n.clone()))
}

/// Exact quotient of two big integers as a scalar.
pub(crate) fn scalar_quotient<S: Scalar>(numer: &BigUint, denom: &BigUint) -> S {
    scalar_from_biguint::<S>(numer) / scalar_from_biguint::<S>(denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1), BigUint::one());
        assert_eq!(double_factorial(0), BigUint::one());
        assert_eq!(double_factorial(1), BigUint::one());
        assert_eq!(double_factorial(5), BigUint::from(15u32));
        assert_eq!(double_factorial(9), BigUint::from(945u32));
        assert_eq!(double_factorial(8), BigUint::from(384u32));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(4, -1), BigUint::zero());
    }

    #[test]
    fn fixed_width_round_trip() {
        let x = <Ratio<i128> as Scalar>::from_ratio(29, 5760);
        assert_eq!(x.to_big_rational(), BigRational::new(29.into(), 5760.into()));
        assert_eq!(x.denominator(), BigUint::from(5760u32));
        let y = -<Ratio<i64> as Scalar>::from_ratio(2, 4);
        assert_eq!(y.to_big_rational(), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    #[should_panic(expected = "does not fit")]
    fn fixed_width_overflow_panics() {
        let big = BigInt::from(u128::MAX);
        let _ = <Ratio<i64> as Scalar>::from_bigint(&big);
    }
}
