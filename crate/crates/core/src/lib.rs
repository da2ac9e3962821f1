//! Exact intersection numbers of psi and kappa classes on moduli spaces of
//! stable curves, and mechanical checks of the arithmetic of their
//! denominators.
//!
//! Everything is generic over an exact [`Scalar`]; [`Rational`] is the
//! default and never overflows, [`SmallRational`] is faster while values fit.

pub mod automorphism;
pub mod denominators;
pub mod error;
pub mod kappa;
pub mod monotonicity;
pub mod oracles;
pub mod primes;
pub mod report;
pub mod scalar;
pub mod tau;

pub use error::{Error, Result};
pub use primes::PrimeFactorization;
pub use report::{VerificationReport, Witness};
pub use scalar::Scalar;
pub use tau::{Evaluator, Strategy, TauSpec};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// Fixed-width rationals; evaluation panics if a value does not fit.
pub type SmallRational = num_rational::Ratio<i128>;

pub type TauEvaluator = Evaluator<Rational>;

pub type KappaEvaluator<'a> = kappa::KappaEvaluator<'a, Rational>;
