//! Exact sparse Laurent polynomials over the integers and factored products of
//! symmetric binomials `T^l - T^-l`.
//!
//! Link invariants are kept in [`BinomialFactorization`] form and expanded on
//! request. Factors whose exponent vector is zero are tracked by a separate
//! net multiplicity and formally cancelled against each other before anything
//! is expanded: a positive remainder means the value is zero, a negative one
//! is reported as a pole.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

mod exponent;
mod factored;
mod poly;

pub use exponent::{ExponentVector, Sign};
pub use factored::{BinomialFactorization, Denotation, Expansion, Invert};
pub use poly::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("pole: net multiplicity of the zero binomial is {zero_mult}")]
    Pole { zero_mult: i64 },
    #[error("division by {divisor} is not exact")]
    NonExactDivision { divisor: String },
    #[error("division by a zero binomial")]
    ZeroDivisor,
    #[error("a denominator vanishes at the evaluation point")]
    VanishingDenominator,
    #[error("evaluation point has a zero coordinate at index {0}")]
    ZeroCoordinate(usize),
    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("exponent {0} is out of range for evaluation")]
    ExponentOverflow(BigInt),
    #[error("expansion exceeds addressable size")]
    ExpansionTooLarge,
    #[error("expansion cancelled")]
    Cancelled,
}

/// Cooperative cancellation flag for long expansions. Checked between
/// multiplication rows and division lines.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub(crate) fn check(token: Option<&CancelToken>) -> Result<(), LaurentError> {
        match token {
            Some(t) if t.is_cancelled() => Err(LaurentError::Cancelled),
            _ => Ok(()),
        }
    }
}

/// `T^l - T^-l`; the zero polynomial when `l = 0`.
pub fn binomial(exp: &ExponentVector) -> LaurentPoly {
    let nvars = exp.len();
    if exp.is_zero() {
        return LaurentPoly::zero(nvars);
    }
    LaurentPoly::from_terms(
        nvars,
        [(exp.clone(), BigInt::one()), (-exp, -BigInt::one())],
    )
    .expect("matching lengths")
}

/// `T^l - 1`; the zero polynomial when `l = 0`.
pub fn one_sided_binomial(exp: &ExponentVector) -> LaurentPoly {
    let nvars = exp.len();
    LaurentPoly::from_terms(
        nvars,
        [
            (exp.clone(), BigInt::one()),
            (ExponentVector::zero(nvars), -BigInt::one()),
        ],
    )
    .expect("matching lengths")
}
