use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Exponent vector of a Laurent monomial `t1^e1 ... tn^en`.
///
/// Coordinates are arbitrary-precision: exponents coming from linking numbers
/// are products of edge weights and have no useful machine bound. The derived
/// ordering is lexicographic, which is the term order used everywhere in this
/// crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<BigInt>);

impl ExponentVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        ExponentVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        ExponentVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![BigInt::zero(); nvars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// True when the first nonzero coordinate is positive. The zero vector is
    /// not normalized.
    pub fn is_normalized(&self) -> bool {
        self.0
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_positive())
    }

    /// Returns the normalized representative of `{self, -self}` together with
    /// whether a flip was needed.
    pub fn normalized(self) -> (Self, bool) {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => (-self, true),
            _ => (self, false),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ExponentVector(self.0.iter().map(|c| c * k).collect())
    }

    /// Drops coordinate `index`, i.e. the exponent of `t_index` after setting
    /// that variable to 1.
    pub fn without(&self, index: usize) -> Self {
        let mut coords = self.0.clone();
        coords.remove(index);
        ExponentVector(coords)
    }

    /// Sum of all coordinates, the exponent after `t1 = ... = tn = t`.
    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn negate_at(&self, index: usize) -> Self {
        let mut coords = self.0.clone();
        coords[index] = -&coords[index];
        ExponentVector(coords)
    }

    /// Coordinate-wise minimum.
    pub fn min_with(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        )
    }
}

impl Neg for ExponentVector {
    type Output = ExponentVector;

    fn neg(self) -> Self::Output {
        ExponentVector(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;

    fn neg(self) -> Self::Output {
        ExponentVector(self.0.iter().map(|c| -c).collect())
    }
}

impl From<Vec<BigInt>> for ExponentVector {
    fn from(coords: Vec<BigInt>) -> Self {
        ExponentVector(coords)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A unit sign, `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.to_i8())
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    /// `self^m`; only the parity of `m` matters.
    pub fn pow(self, m: i64) -> Self {
        if m % 2 == 0 {
            Sign::Plus
        } else {
            self
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.to_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, Self::Error> {
        Sign::from_i64(v as i64).ok_or_else(|| format!("sign must be +1 or -1, got {v}"))
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}
