use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CancelToken, ExponentVector, LaurentError};

/// Sparse multivariate Laurent polynomial with integer coefficients.
///
/// Canonical: no stored coefficient is zero, so structural equality is
/// equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(ExponentVector::zero(nvars), BigInt::one())
    }

    pub fn monomial(exp: ExponentVector, coeff: BigInt) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { nvars, terms }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents
    /// and dropping zero coefficients.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut p = LaurentPoly::zero(nvars);
        for (exp, coeff) in terms {
            if exp.len() != nvars {
                return Err(LaurentError::VarCountMismatch {
                    left: nvars,
                    right: exp.len(),
                });
            }
            p.add_term(exp, coeff);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExponentVector) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Lex-greatest term.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.leading_term().map(|(_, c)| c)
    }

    fn add_term(&mut self, exp: ExponentVector, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            return Err(LaurentError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.mul_cancellable(other, None)
    }

    pub(crate) fn mul_cancellable(
        &self,
        other: &Self,
        cancel: Option<&CancelToken>,
    ) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = LaurentPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            CancelToken::check(cancel)?;
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Multiplies by the monomial `T^shift`.
    pub fn shifted(&self, shift: &ExponentVector) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(shift), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `t_i -> t_i^k` in every variable.
    pub fn power_substituted(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.scale(&k), c.clone());
        }
        out
    }

    /// Exact quotient by the binomial `T^l - T^-l`.
    pub fn div_exact_binomial(&self, exp: &ExponentVector) -> Result<Self, LaurentError> {
        self.div_binomial_cancellable(exp, None)
    }

    pub(crate) fn div_binomial_cancellable(
        &self,
        exp: &ExponentVector,
        cancel: Option<&CancelToken>,
    ) -> Result<Self, LaurentError> {
        if exp.len() != self.nvars {
            return Err(LaurentError::VarCountMismatch {
                left: self.nvars,
                right: exp.len(),
            });
        }
        if exp.is_zero() {
            return Err(LaurentError::ZeroDivisor);
        }
        // T^l - T^-l = T^-l (T^2l - 1)
        let (base, flipped) = exp.clone().normalized();
        let doubled = base.scale(&BigInt::from(2));
        let q = self
            .div_one_sided_cancellable(&doubled, cancel)
            .map_err(|e| match e {
                LaurentError::NonExactDivision { .. } => LaurentError::NonExactDivision {
                    divisor: super::binomial(exp).to_string(),
                },
                other => other,
            })?
            .shifted(&base);
        Ok(if flipped { q.negated() } else { q })
    }

    /// Exact quotient by `T^u - 1`.
    pub fn div_exact_one_sided(&self, exp: &ExponentVector) -> Result<Self, LaurentError> {
        self.div_one_sided_cancellable(exp, None)
    }

    /// Lexicographic long division by `T^u - 1`.
    ///
    /// Multiplication by `T^u - 1` only mixes monomials on a common line
    /// `e + k u`, and lex order restricted to a line is the order of `k`, so
    /// the division runs independently per line as a synthetic division by
    /// `s - 1` in `s = T^u`. The remainder on a line is its coefficient sum.
    pub(crate) fn div_one_sided_cancellable(
        &self,
        exp: &ExponentVector,
        cancel: Option<&CancelToken>,
    ) -> Result<Self, LaurentError> {
        if exp.len() != self.nvars {
            return Err(LaurentError::VarCountMismatch {
                left: self.nvars,
                right: exp.len(),
            });
        }
        if exp.is_zero() {
            return Err(LaurentError::ZeroDivisor);
        }
        let (u, flipped) = exp.clone().normalized();
        let pivot = u
            .coords()
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero exponent");
        let step = &u.coords()[pivot];

        let mut lines: BTreeMap<ExponentVector, BTreeMap<BigInt, &BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.coords()[pivot].div_floor(step);
            let key = e.sub(&u.scale(&k));
            lines.entry(key).or_default().insert(k, c);
        }

        let mut out = LaurentPoly::zero(self.nvars);
        for (key, line) in lines {
            CancelToken::check(cancel)?;
            let mut running = BigInt::zero();
            let mut iter = line.iter().rev().peekable();
            while let Some((k, c)) = iter.next() {
                running += *c;
                let Some((next_k, _)) = iter.peek() else {
                    if !running.is_zero() {
                        return Err(LaurentError::NonExactDivision {
                            divisor: one_sided_string(exp),
                        });
                    }
                    break;
                };
                if running.is_zero() {
                    continue;
                }
                // quotient coefficient `running` at every s^j, next_k <= j < k
                let span = (k - *next_k)
                    .to_u64()
                    .ok_or(LaurentError::ExpansionTooLarge)?;
                let mut j = (*next_k).clone();
                for i in 0..span {
                    if i % 4096 == 4095 {
                        CancelToken::check(cancel)?;
                    }
                    out.terms.insert(key.add(&u.scale(&j)), running.clone());
                    j += 1;
                }
            }
        }
        // T^-u - 1 = -T^-u (T^u - 1)
        Ok(if flipped {
            out.shifted(&u).negated()
        } else {
            out
        })
    }

    /// Deterministic representative of the class of `self` modulo units
    /// `±t1^a1 ... tn^an`: every variable's minimal exponent is shifted to 0
    /// and the lex-greatest coefficient is made positive.
    pub fn unit_normalized(&self) -> Self {
        let Some(first) = self.terms.keys().next() else {
            return self.clone();
        };
        let min = self
            .terms
            .keys()
            .fold(first.clone(), |acc, e| acc.min_with(e));
        let shifted = self.shifted(&-min);
        if shifted.leading_coeff().is_some_and(Signed::is_negative) {
            shifted.negated()
        } else {
            shifted
        }
    }

    /// Exact evaluation at a point with nonzero rational coordinates.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        check_point(self.nvars, point)?;
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, k) in point.iter().zip(e.coords()) {
                term *= rational_pow(x, k)?;
            }
            sum += term;
        }
        Ok(sum)
    }
}

pub(crate) fn check_point(nvars: usize, point: &[BigRational]) -> Result<(), LaurentError> {
    if point.len() != nvars {
        return Err(LaurentError::PointLength {
            expected: nvars,
            got: point.len(),
        });
    }
    if let Some(i) = point.iter().position(Zero::is_zero) {
        return Err(LaurentError::ZeroCoordinate(i));
    }
    Ok(())
}

pub(crate) fn rational_pow(x: &BigRational, k: &BigInt) -> Result<BigRational, LaurentError> {
    let k = k
        .to_i32()
        .ok_or_else(|| LaurentError::ExponentOverflow(k.clone()))?;
    Ok(x.pow(k))
}

fn one_sided_string(exp: &ExponentVector) -> String {
    let mono = Monomial {
        exp,
        nvars: exp.len(),
    };
    format!("{mono} - 1")
}

pub(crate) fn var_name(nvars: usize, index: usize) -> String {
    if nvars == 1 {
        "t".to_string()
    } else {
        format!("t{}", index + 1)
    }
}

/// Renders `t1^a t2^b`, omitting zero exponents; renders nothing for the
/// zero vector.
pub(crate) struct Monomial<'a> {
    pub exp: &'a ExponentVector,
    pub nvars: usize,
}

impl fmt::Display for Monomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, k) in self.exp.coords().iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}", var_name(self.nvars, i))?;
            if !k.is_one() {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending lex order, e.g. `t^2 - 1 + t^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                write!(
                    f,
                    "{}",
                    Monomial {
                        exp: e,
                        nvars: self.nvars
                    }
                )?;
            }
        }
        Ok(())
    }
}
