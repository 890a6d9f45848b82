//! Link invariants read off a splice diagram.
//!
//! The potential function is
//!
//! ```text
//! ∇(t1..tn) = (-1)^k- · ∏_v (T^{l_v} - T^{-l_v})^(δ_v - 2)
//! ```
//!
//! over non-arrowhead vertices `v` of valency `δ_v`, with
//! `l_v = (l_{1v}, ..., l_{nv})` and `k-` the number of negative arrowheads.
//! Everything else (Alexander and Conway polynomials, Seifert-determinant
//! sign) is derived from the same product.

use std::cmp::Reverse;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::diagram::{SpliceDiagram, VertexId};
use crate::laurent::{
    BinomialFactorization, CancelToken, Denotation, Expansion, ExponentVector, LaurentError, Sign,
};
use crate::linking::{linking_number, linking_table, LinkingData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Algebra(#[from] LaurentError),
    #[error("diagram is not fibered")]
    NotFibered,
}

/// Conway potential function: zero, or a canonical factored form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Potential {
    Zero,
    Factored(BinomialFactorization),
}

impl Potential {
    pub fn is_zero(&self) -> bool {
        matches!(self, Potential::Zero)
    }

    pub fn factored(&self) -> Option<&BinomialFactorization> {
        match self {
            Potential::Zero => None,
            Potential::Factored(f) => Some(f),
        }
    }
}

impl std::fmt::Display for Potential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Potential::Zero => write!(f, "0"),
            Potential::Factored(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignCounts {
    /// Arrowheads of weight -1.
    pub k_minus: usize,
    /// Non-arrowhead vertices with `l_v < 0` and odd valency.
    pub j_minus: usize,
}

/// The product for ∇, with zero binomials kept in the zero multiplicity.
///
/// When vanishing factors cancel formally, the literal product loses their
/// signs. These are recovered by turning virtual components at suitable
/// vertices into genuine arrows, so that no factor vanishes, and coming back
/// one arrow at a time with the Torres formula. Should no such set exist,
/// the literal product is returned.
pub fn potential_factors(d: &SpliceDiagram) -> BinomialFactorization {
    potential_factors_with(d, &linking_table(d))
}

pub fn potential_factors_with(d: &SpliceDiagram, data: &LinkingData) -> BinomialFactorization {
    let raw = formal_product(d, data);
    let vanishing = vanishing_vertices(d, data);
    if vanishing.is_empty() || raw.zero_mult() != 0 {
        return raw;
    }
    resolve_cancellation(d, &vanishing).unwrap_or(raw)
}

fn formal_product(d: &SpliceDiagram, data: &LinkingData) -> BinomialFactorization {
    let counts = sign_counts_with(d, data);
    let mut f = BinomialFactorization::with_sign(
        d.component_count(),
        Sign::from_parity(counts.k_minus % 2 == 1),
    );
    push_vertex_factors(d, data, &mut f);
    f
}

fn push_vertex_factors(d: &SpliceDiagram, data: &LinkingData, f: &mut BinomialFactorization) {
    for &v in data.vertices() {
        let m = d.valency(v) as i64 - 2;
        let exp = data.exponents(v).expect("table covers every non-arrowhead");
        f.push(exp, m).expect("one exponent per component");
    }
}

/// Vertices contributing a zero binomial: every `l_{iv}` is 0 and the
/// valency is not 2.
fn vanishing_vertices(d: &SpliceDiagram, data: &LinkingData) -> Vec<VertexId> {
    data.vertices()
        .iter()
        .copied()
        .filter(|&v| d.valency(v) != 2 && data.exponents(v).expect("covered").is_zero())
        .collect()
}

/// Linking number of the virtual component at `w` with the one at `v`; for
/// `v == w`, of an arrow attached at `w` with `L_w`.
fn virtual_linking(d: &SpliceDiagram, w: VertexId, v: VertexId) -> BigInt {
    if v == w {
        d.incident(w)
            .map(|(_, e)| BigInt::from(e.weight_at(w)))
            .product()
    } else {
        linking_number(d, w, v).expect("distinct vertices of one tree")
    }
}

/// Tries auxiliary arrow sets greedily, one per starting vertex, until the
/// Torres descent goes through.
fn resolve_cancellation(
    d: &SpliceDiagram,
    vanishing: &[VertexId],
) -> Option<BinomialFactorization> {
    let candidates: Vec<VertexId> = d.non_arrowheads().collect();
    candidates.iter().find_map(|&first| {
        let sites = cover(d, &candidates, vanishing, first)?;
        descend(d, &sites)
    })
}

/// Sites starting with `first` whose arrows link every vanishing vertex.
fn cover(
    d: &SpliceDiagram,
    candidates: &[VertexId],
    vanishing: &[VertexId],
    first: VertexId,
) -> Option<Vec<VertexId>> {
    let mut uncovered: Vec<VertexId> = vanishing
        .iter()
        .copied()
        .filter(|&v| virtual_linking(d, first, v).is_zero())
        .collect();
    if uncovered.len() == vanishing.len() {
        return None;
    }
    let mut sites = vec![first];
    while !uncovered.is_empty() {
        let (covered, site) = candidates
            .iter()
            .filter(|w| !sites.contains(*w))
            .map(|&w| {
                let c = uncovered
                    .iter()
                    .filter(|&&v| !virtual_linking(d, w, v).is_zero())
                    .count();
                (c, Reverse(w))
            })
            .max()?;
        if covered == 0 {
            return None;
        }
        uncovered.retain(|&v| virtual_linking(d, site.0, v).is_zero());
        sites.push(site.0);
    }
    Some(sites)
}

fn descend(d: &SpliceDiagram, sites: &[VertexId]) -> Option<BinomialFactorization> {
    let n = d.component_count();
    let extended = d.with_virtual_arrows(sites);
    let ext_data = linking_table(&extended);
    if !vanishing_vertices(&extended, &ext_data).is_empty() {
        return None;
    }
    let mut f = formal_product(&extended, &ext_data);
    for j in (n..n + sites.len()).rev() {
        f = f.substitute_one(j).ok()?;
        let row = ExponentVector::new((0..j).map(|i| ext_data.pair(j, i).clone()).collect());
        if row.is_zero() {
            return None;
        }
        f.push(row, -1).ok()?;
    }
    (f.zero_mult() == 0).then_some(f)
}

fn classify(f: BinomialFactorization) -> Result<Potential, InvariantError> {
    match f.denotation() {
        Denotation::Zero => Ok(Potential::Zero),
        Denotation::Pole => Err(LaurentError::Pole {
            zero_mult: f.zero_mult(),
        }
        .into()),
        Denotation::Nonzero => Ok(Potential::Factored(f)),
    }
}

/// Signed multivariable Conway potential function.
pub fn conway_potential(d: &SpliceDiagram) -> Result<Potential, InvariantError> {
    classify(potential_factors(d))
}

pub fn conway_potential_with(
    d: &SpliceDiagram,
    data: &LinkingData,
) -> Result<Potential, InvariantError> {
    classify(potential_factors_with(d, data))
}

/// Multivariable Alexander polynomial, unit-normalized.
pub fn alexander_polynomial(d: &SpliceDiagram) -> Result<Expansion, InvariantError> {
    alexander_inner(d, &linking_table(d), None)
}

pub fn alexander_polynomial_cancellable(
    d: &SpliceDiagram,
    cancel: &CancelToken,
) -> Result<Expansion, InvariantError> {
    alexander_inner(d, &linking_table(d), Some(cancel))
}

pub(crate) fn alexander_inner(
    d: &SpliceDiagram,
    data: &LinkingData,
    cancel: Option<&CancelToken>,
) -> Result<Expansion, InvariantError> {
    let mut f = BinomialFactorization::unit(d.component_count());
    push_vertex_factors(d, data, &mut f);
    let knot = d.component_count() == 1;
    Ok(match cancel {
        Some(c) => f.expand_onesided_cancellable(knot, c)?,
        None => f.expand_onesided(knot)?,
    })
}

/// `(t - t^-1) ∇(t, ..., t)` in factored form, before formal cancellation.
pub fn conway_polynomial_factors(d: &SpliceDiagram) -> BinomialFactorization {
    conway_factors_with(&potential_factors(d))
}

pub(crate) fn conway_factors_with(potential: &BinomialFactorization) -> BinomialFactorization {
    let mut omega = potential.collapse();
    omega
        .push(ExponentVector::from_i64s(&[1]), 1)
        .expect("one variable");
    omega
}

/// One-variable Conway polynomial `Ω(t) = (t - t^-1) ∇(t, ..., t)`, expanded.
pub fn conway_polynomial(d: &SpliceDiagram) -> Result<Expansion, InvariantError> {
    Ok(conway_polynomial_factors(d).expand()?)
}

pub fn conway_polynomial_cancellable(
    d: &SpliceDiagram,
    cancel: &CancelToken,
) -> Result<Expansion, InvariantError> {
    Ok(conway_polynomial_factors(d).expand_cancellable(cancel)?)
}

/// True when `l_v != 0` at every node of valency at least 3. Leaves and
/// valency-2 vertices are not consulted: a valency-2 vertex contributes no
/// factor and only occurs in non-minimal diagrams (the negative Hopf link
/// drawn with a middle vertex has `l_c = 0` there and is fibered).
pub fn is_fibered(d: &SpliceDiagram) -> bool {
    is_fibered_with(d, &linking_table(d))
}

pub fn is_fibered_with(d: &SpliceDiagram, data: &LinkingData) -> bool {
    data.vertices()
        .iter()
        .filter(|&&v| d.valency(v) >= 3)
        .all(|&v| !data.total(v).expect("covered").is_zero())
}

pub fn sign_counts(d: &SpliceDiagram) -> SignCounts {
    sign_counts_with(d, &linking_table(d))
}

pub fn sign_counts_with(d: &SpliceDiagram, data: &LinkingData) -> SignCounts {
    let k_minus = (0..d.component_count())
        .filter(|&i| d.arrow_sign(i).is_minus())
        .count();
    let j_minus = data
        .vertices()
        .iter()
        .filter(|&&v| d.valency(v) % 2 == 1 && data.total(v).expect("covered").is_negative())
        .count();
    SignCounts { k_minus, j_minus }
}

/// `det(-A) = (-1)^(k- + j-)` for a Seifert matrix `A` of a fibered link.
pub fn seifert_determinant_sign(d: &SpliceDiagram) -> Result<Sign, InvariantError> {
    let data = linking_table(d);
    if !is_fibered_with(d, &data) {
        return Err(InvariantError::NotFibered);
    }
    let c = sign_counts_with(d, &data);
    Ok(Sign::from_parity((c.k_minus + c.j_minus) % 2 == 1))
}

/// Parity of the enhanced Milnor number, `(k- + j-) mod 2`.
pub fn enhanced_milnor_parity(d: &SpliceDiagram) -> Result<u8, InvariantError> {
    seifert_determinant_sign(d).map(|s| u8::from(s.is_minus()))
}
