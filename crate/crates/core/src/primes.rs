//! Small primes, p-adic orders and prime factorizations of denominators.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(domain(format!("{p} is not prime")))
    }
}

/// `ord(p, n)`: the exponent of the prime `p` in a positive integer.
pub fn ord(p: u64, n: &BigUint) -> Result<u32> {
    check_prime(p)?;
    if n.is_zero() {
        return Err(domain("ord of 0 is undefined"));
    }
    let p_big = BigUint::from(p);
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p_big);
        if !r.is_zero() {
            return Ok(k);
        }
        m = q;
        k += 1;
    }
}

pub fn ord_u64(p: u64, n: u64) -> Result<u32> {
    ord(p, &BigUint::from(n))
}

/// `ord(p, m!)` by Legendre's formula.
pub fn ord_factorial(p: u64, m: u64) -> Result<u32> {
    check_prime(p)?;
    let mut k = 0;
    let mut q = m / p;
    while q > 0 {
        k += q as u32;
        q /= p;
    }
    Ok(k)
}

/// A positive integer as a map from prime to exponent.
///
/// The empty map is 1. Rendered canonically as `2^7*3^2*5`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactorization {
    factors: BTreeMap<u64, u32>,
}

impl PrimeFactorization {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut f = Self::one();
        for (p, e) in pairs {
            check_prime(p)?;
            if e > 0 {
                *f.factors.entry(p).or_insert(0) += e;
            }
        }
        Ok(f)
    }

    /// Factors `n` by trial division over the primes up to `bound`.
    ///
    /// Returns the factorization of the smooth part and the leftover cofactor.
    pub fn factor_smooth(n: &BigUint, bound: u64) -> (Self, BigUint) {
        assert!(!n.is_zero(), "cannot factor 0");
        let mut f = Self::one();
        let mut m = n.clone();
        for p in primes_up_to(bound) {
            let p_big = BigUint::from(p);
            let mut e = 0;
            loop {
                let (q, r) = m.div_rem(&p_big);
                if !r.is_zero() {
                    break;
                }
                m = q;
                e += 1;
            }
            if e > 0 {
                f.factors.insert(p, e);
            }
        }
        (f, m)
    }

    /// Complete factorization by trial division; only sensible for values
    /// that are known to be small or smooth.
    pub fn factor_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(domain("cannot factor 0"));
        }
        let mut f = Self::one();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            while m.is_multiple_of(p) {
                *f.factors.entry(p).or_insert(0) += 1;
                m /= p;
            }
            p += 1;
        }
        if m > 1 {
            *f.factors.entry(m).or_insert(0) += 1;
        }
        Ok(f)
    }

    pub fn ord(&self, p: u64) -> Result<u32> {
        check_prime(p)?;
        Ok(self.exponent(p))
    }

    pub(crate) fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.keys().next_back().copied()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Least common multiple; associative and commutative.
    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.lcm_assign(other);
        out
    }

    pub fn lcm_assign(&mut self, other: &Self) {
        for (&p, &e) in &other.factors {
            let slot = self.factors.entry(p).or_insert(0);
            *slot = (*slot).max(e);
        }
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|(&p, &e)| other.exponent(p) >= e)
    }

    pub fn to_biguint(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.to_biguint().to_u64()
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for PrimeFactorization {
    type Err = Error;

    /// Parses `2^7*3^2*5` (or `1`). Repeated primes multiply.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let bad = || domain(format!("malformed factorization {s:?}"));
        let pairs = s
            .split('*')
            .map(|part| {
                let (p, e) = match part.trim().split_once('^') {
                    Some((p, e)) => (p, e.parse::<u32>().map_err(|_| bad())?),
                    None => (part.trim(), 1),
                };
                Ok((p.parse::<u64>().map_err(|_| bad())?, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_up_to(500);
        let brute: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, brute);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn p_adic_orders() {
        assert_eq!(ord_u64(2, 1152).unwrap(), 7);
        assert_eq!(ord_u64(5, 2u64.pow(7) * 9 * 5).unwrap(), 1);
        assert_eq!(ord_u64(7, 24).unwrap(), 0);
        assert!(ord_u64(4, 24).is_err());
        assert!(ord_u64(2, 0).is_err());
        assert_eq!(ord_factorial(2, 6).unwrap(), 4);
        assert_eq!(ord_factorial(5, 11).unwrap(), 2);
        let f = PrimeFactorization::factor_u64(1152).unwrap();
        assert_eq!(f.ord(2).unwrap(), 7);
        assert_eq!(f.ord(3).unwrap(), 2);
        assert_eq!(f.ord(5).unwrap(), 0);
        assert!(f.ord(9).is_err());
    }

    #[test]
    fn legendre_matches_direct() {
        for p in [2u64, 3, 5, 7] {
            for m in 0..=20u64 {
                let direct = ord(p, &crate::scalar::factorial(m)).unwrap();
                assert_eq!(ord_factorial(p, m).unwrap(), direct);
            }
        }
    }

    #[test]
    fn rendering_and_parsing() {
        let f = PrimeFactorization::factor_u64(2u64.pow(7) * 9 * 5).unwrap();
        assert_eq!(f.to_string(), "2^7*3^2*5");
        assert_eq!("2^7*3^2*5".parse::<PrimeFactorization>().unwrap(), f);
        assert_eq!(PrimeFactorization::one().to_string(), "1");
        assert_eq!("1".parse::<PrimeFactorization>().unwrap(), PrimeFactorization::one());
        assert!("2^x".parse::<PrimeFactorization>().is_err());
        assert!("4^2".parse::<PrimeFactorization>().is_err());
        assert_eq!(f.to_u64(), Some(5760));
    }

    #[test]
    fn smooth_factoring_reports_cofactor() {
        let n = BigUint::from(24u32 * 29);
        let (f, rest) = PrimeFactorization::factor_smooth(&n, 5);
        assert_eq!(f.to_string(), "2^3*3");
        assert_eq!(rest, BigUint::from(29u32));
    }

    #[test]
    fn lcm_and_divisibility() {
        let a = PrimeFactorization::factor_u64(1152).unwrap();
        let b = PrimeFactorization::factor_u64(5760).unwrap();
        assert_eq!(a.lcm(&b).to_u64(), Some(5760));
        assert!(a.divides(&a.lcm(&b)));
        assert!(!b.divides(&a));
        assert!(PrimeFactorization::one().divides(&a));
    }
}
