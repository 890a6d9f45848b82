use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{check_point, rational_pow, Monomial};
use super::{
    binomial, one_sided_binomial, CancelToken, ExponentVector, LaurentError, LaurentPoly, Sign,
};

/// Result of expanding a factored form: either the distinguished zero value
/// produced by formal cancellation, or a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expansion {
    Zero,
    Poly(LaurentPoly),
}

impl Expansion {
    pub fn is_zero(&self) -> bool {
        match self {
            Expansion::Zero => true,
            Expansion::Poly(p) => p.is_zero(),
        }
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        match self {
            Expansion::Zero => None,
            Expansion::Poly(p) => Some(p),
        }
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expansion::Zero => write!(f, "0"),
            Expansion::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// What a factored form denotes after formal cancellation of zero binomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Denotation {
    Zero,
    Pole,
    Nonzero,
}

/// Which variables [`BinomialFactorization::invert_vars`] inverts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invert {
    All,
    Single(usize),
}

/// `sign * (T^0 - T^0)^zero_mult * prod (T^l - T^-l)^m`.
///
/// Every stored `l` is nonzero with positive first nonzero coordinate and no
/// stored multiplicity is zero, so equal products have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinomialFactorization {
    nvars: usize,
    sign: Sign,
    factors: BTreeMap<ExponentVector, i64>,
    zero_mult: i64,
}

impl BinomialFactorization {
    /// The constant `+1` in `nvars` variables.
    pub fn unit(nvars: usize) -> Self {
        Self::with_sign(nvars, Sign::Plus)
    }

    pub fn with_sign(nvars: usize, sign: Sign) -> Self {
        BinomialFactorization {
            nvars,
            sign,
            factors: BTreeMap::new(),
            zero_mult: 0,
        }
    }

    /// Builds a normalized form from arbitrary (possibly repeated or
    /// unnormalized) factors.
    pub fn from_parts<I>(
        nvars: usize,
        sign: Sign,
        factors: I,
        zero_mult: i64,
    ) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (ExponentVector, i64)>,
    {
        let mut f = Self::with_sign(nvars, sign);
        f.zero_mult = zero_mult;
        for (exp, m) in factors {
            f.push(exp, m)?;
        }
        Ok(f)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn zero_mult(&self) -> i64 {
        self.zero_mult
    }

    /// Normalized factors in ascending lex order of their exponent vectors.
    pub fn factors(&self) -> impl Iterator<Item = (&ExponentVector, i64)> {
        self.factors.iter().map(|(e, &m)| (e, m))
    }

    pub fn multiplicity(&self, exp: &ExponentVector) -> i64 {
        self.factors.get(exp).copied().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.sign = -out.sign;
        out
    }

    /// Multiplies in `(T^l - T^-l)^m`.
    pub fn push(&mut self, exp: ExponentVector, m: i64) -> Result<(), LaurentError> {
        if exp.len() != self.nvars {
            return Err(LaurentError::VarCountMismatch {
                left: self.nvars,
                right: exp.len(),
            });
        }
        if m == 0 {
            return Ok(());
        }
        if exp.is_zero() {
            self.zero_mult += m;
            return Ok(());
        }
        let (exp, flipped) = exp.normalized();
        if flipped {
            self.sign = self.sign * Sign::Minus.pow(m);
        }
        use std::collections::btree_map::Entry;
        match self.factors.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let mut out = self.clone();
        out.sign = out.sign * other.sign;
        out.zero_mult += other.zero_mult;
        for (e, &m) in &other.factors {
            out.push(e.clone(), m)?;
        }
        Ok(out)
    }

    fn remap(&self, nvars: usize, f: impl Fn(&ExponentVector) -> ExponentVector) -> Self {
        let mut out = Self::with_sign(nvars, self.sign);
        out.zero_mult = self.zero_mult;
        for (e, &m) in &self.factors {
            out.push(f(e), m)
                .expect("remap preserves the variable count");
        }
        out
    }

    /// Sets `t_index = 1` (0-based index). Factors that become `T^0 - T^0`
    /// move into the zero multiplicity.
    pub fn substitute_one(&self, index: usize) -> Result<Self, LaurentError> {
        if index >= self.nvars {
            return Err(LaurentError::IndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        Ok(self.remap(self.nvars - 1, |e| e.without(index)))
    }

    /// Sets `t1 = ... = tn = t`.
    pub fn collapse(&self) -> Self {
        self.remap(1, |e| ExponentVector::new(vec![e.total()]))
    }

    pub fn invert_vars(&self, which: Invert) -> Result<Self, LaurentError> {
        match which {
            Invert::All => Ok(self.remap(self.nvars, |e| -e)),
            Invert::Single(index) if index < self.nvars => {
                Ok(self.remap(self.nvars, |e| e.negate_at(index)))
            }
            Invert::Single(index) => Err(LaurentError::IndexOutOfRange {
                index,
                nvars: self.nvars,
            }),
        }
    }

    pub fn denotation(&self) -> Denotation {
        match self.zero_mult {
            z if z > 0 => Denotation::Zero,
            z if z < 0 => Denotation::Pole,
            _ => Denotation::Nonzero,
        }
    }

    /// Equality of denoted values: two zero values are equal whatever their
    /// bookkeeping, otherwise the canonical forms must coincide.
    pub fn denotes_same(&self, other: &Self) -> bool {
        match (self.denotation(), other.denotation()) {
            (Denotation::Zero, Denotation::Zero) => self.nvars == other.nvars,
            _ => self == other,
        }
    }

    pub fn expand(&self) -> Result<Expansion, LaurentError> {
        self.expand_inner(None)
    }

    pub fn expand_cancellable(&self, cancel: &CancelToken) -> Result<Expansion, LaurentError> {
        self.expand_inner(Some(cancel))
    }

    fn check_denotation(&self) -> Result<bool, LaurentError> {
        match self.denotation() {
            Denotation::Zero => Ok(true),
            Denotation::Pole => Err(LaurentError::Pole {
                zero_mult: self.zero_mult,
            }),
            Denotation::Nonzero => Ok(false),
        }
    }

    fn expand_inner(&self, cancel: Option<&CancelToken>) -> Result<Expansion, LaurentError> {
        if self.check_denotation()? {
            return Ok(Expansion::Zero);
        }
        let mut acc =
            LaurentPoly::monomial(ExponentVector::zero(self.nvars), self.sign.to_bigint());
        for (e, &m) in self.factors.iter().filter(|(_, &m)| m > 0) {
            let b = binomial(e);
            for _ in 0..m {
                acc = acc.mul_cancellable(&b, cancel)?;
            }
        }
        for (e, &m) in self.factors.iter().filter(|(_, &m)| m < 0) {
            for _ in 0..-m {
                acc = acc.div_binomial_cancellable(e, cancel)?;
            }
        }
        Ok(Expansion::Poly(acc))
    }

    /// Expands with one-sided factors `(T^l - 1)^m` in place of the symmetric
    /// binomials, ignoring the sign, and returns the unit-normalized result.
    /// With `knot_extra` the numerator also carries `t - 1` (one variable
    /// only).
    pub fn expand_onesided(&self, knot_extra: bool) -> Result<Expansion, LaurentError> {
        self.expand_onesided_inner(knot_extra, None)
    }

    pub fn expand_onesided_cancellable(
        &self,
        knot_extra: bool,
        cancel: &CancelToken,
    ) -> Result<Expansion, LaurentError> {
        self.expand_onesided_inner(knot_extra, Some(cancel))
    }

    fn expand_onesided_inner(
        &self,
        knot_extra: bool,
        cancel: Option<&CancelToken>,
    ) -> Result<Expansion, LaurentError> {
        if self.check_denotation()? {
            return Ok(Expansion::Zero);
        }
        let mut acc = LaurentPoly::one(self.nvars);
        if knot_extra {
            if self.nvars != 1 {
                return Err(LaurentError::VarCountMismatch {
                    left: self.nvars,
                    right: 1,
                });
            }
            acc = one_sided_binomial(&ExponentVector::from_i64s(&[1]));
        }
        for (e, &m) in self.factors.iter().filter(|(_, &m)| m > 0) {
            let b = one_sided_binomial(e);
            for _ in 0..m {
                acc = acc.mul_cancellable(&b, cancel)?;
            }
        }
        for (e, &m) in self.factors.iter().filter(|(_, &m)| m < 0) {
            for _ in 0..-m {
                acc = acc.div_one_sided_cancellable(e, cancel)?;
            }
        }
        Ok(Expansion::Poly(acc.unit_normalized()))
    }

    /// Exact value at a rational point, without expanding.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        check_point(self.nvars, point)?;
        if self.check_denotation()? {
            return Ok(BigRational::zero());
        }
        let mut num = BigRational::from_integer(self.sign.to_bigint());
        let mut den = BigRational::one();
        for (e, &m) in &self.factors {
            let value = binomial_value(e, point)?;
            let power = value.pow(m.unsigned_abs() as i32);
            if m > 0 {
                num *= power;
            } else {
                den *= power;
            }
        }
        if den.is_zero() {
            return Err(LaurentError::VanishingDenominator);
        }
        Ok(num / den)
    }
}

fn binomial_value(
    exp: &ExponentVector,
    point: &[BigRational],
) -> Result<BigRational, LaurentError> {
    let mut mono = BigRational::one();
    for (x, k) in point.iter().zip(exp.coords()) {
        mono *= rational_pow(x, k)?;
    }
    let inv = mono.recip();
    Ok(mono - inv)
}

pub(crate) struct BinomialDisplay<'a>(pub &'a ExponentVector);

impl fmt::Display for BinomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nvars = self.0.len();
        let neg = -self.0;
        write!(
            f,
            "{} - {}",
            Monomial { exp: self.0, nvars },
            Monomial { exp: &neg, nvars }
        )
    }
}

impl fmt::Display for BinomialFactorization {
    /// `(-1)^s * (t1^a t2^b - t1^-a t2^-b)^m * ...`, with `(1 - 1)^z` for a
    /// nonzero zero multiplicity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(-1)^{}", u8::from(self.sign.is_minus()))?;
        if self.zero_mult != 0 {
            write!(f, " * (1 - 1)^{}", self.zero_mult)?;
        }
        for (e, m) in self.factors.iter().rev() {
            write!(f, " * ({})^{m}", BinomialDisplay(e))?;
        }
        Ok(())
    }
}
