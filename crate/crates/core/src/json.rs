//! JSON interchange for factored and expanded values, and the output
//! envelope shared by the command-line tools.
//!
//! Exponents are JSON integers of any size; coefficients are decimal strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::laurent::{
    BinomialFactorization, Expansion, ExponentVector, LaurentError, LaurentPoly, Sign,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("`{0}` is not an integer")]
    NotAnInteger(String),
    #[error(transparent)]
    Algebra(#[from] LaurentError),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Syntax(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub exponents: Vec<Number>,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredJson {
    pub nvars: usize,
    pub sign: Sign,
    pub zero_mult: i64,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<Number>,
    pub coeff: String,
}

/// An expanded value; no terms means zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

fn encode_exponents(e: &ExponentVector) -> Vec<Number> {
    e.coords()
        .iter()
        .map(|c| Number::from_str(&c.to_string()).expect("integers are JSON numbers"))
        .collect()
}

fn decode_integer(s: &str) -> Result<BigInt, JsonError> {
    BigInt::from_str(s).map_err(|_| JsonError::NotAnInteger(s.to_string()))
}

fn decode_exponents(ns: &[Number]) -> Result<ExponentVector, JsonError> {
    ns.iter()
        .map(|n| decode_integer(&n.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map(ExponentVector::new)
}

impl From<&BinomialFactorization> for FactoredJson {
    fn from(f: &BinomialFactorization) -> Self {
        FactoredJson {
            nvars: f.nvars(),
            sign: f.sign(),
            zero_mult: f.zero_mult(),
            factors: f
                .factors()
                .map(|(e, m)| FactorJson {
                    exponents: encode_exponents(e),
                    multiplicity: m,
                })
                .collect(),
        }
    }
}

impl TryFrom<&FactoredJson> for BinomialFactorization {
    type Error = JsonError;

    fn try_from(j: &FactoredJson) -> Result<Self, JsonError> {
        let factors = j
            .factors
            .iter()
            .map(|f| Ok((decode_exponents(&f.exponents)?, f.multiplicity)))
            .collect::<Result<Vec<_>, JsonError>>()?;
        Ok(BinomialFactorization::from_parts(
            j.nvars,
            j.sign,
            factors,
            j.zero_mult,
        )?)
    }
}

impl ExpandedJson {
    pub fn from_poly(p: &LaurentPoly) -> Self {
        ExpandedJson {
            nvars: p.nvars(),
            terms: p
                .terms()
                .rev()
                .map(|(e, c)| TermJson {
                    exponents: encode_exponents(e),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_expansion(e: &Expansion, nvars: usize) -> Self {
        match e {
            Expansion::Zero => ExpandedJson {
                nvars,
                terms: Vec::new(),
            },
            Expansion::Poly(p) => Self::from_poly(p),
        }
    }

    pub fn to_poly(&self) -> Result<LaurentPoly, JsonError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((decode_exponents(&t.exponents)?, decode_integer(&t.coeff)?)))
            .collect::<Result<Vec<_>, JsonError>>()?;
        Ok(LaurentPoly::from_terms(self.nvars, terms)?)
    }

    pub fn to_expansion(&self) -> Result<Expansion, JsonError> {
        let p = self.to_poly()?;
        Ok(if p.is_zero() {
            Expansion::Zero
        } else {
            Expansion::Poly(p)
        })
    }
}

/// Hex SHA-256 of the input bytes.
pub fn input_digest(input: &[u8]) -> String {
    hex::encode(Sha256::digest(input))
}

/// Top-level JSON document written by the tools. Results are keyed by
/// computation name; key order is fixed, so identical inputs give identical
/// bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    pub requested: Vec<String>,
    pub results: BTreeMap<String, Value>,
    pub diagnostics: Vec<String>,
}

impl OutputEnvelope {
    pub fn new(tool: &str, version: &str, input: &[u8]) -> Self {
        OutputEnvelope {
            tool: tool.to_string(),
            version: version.to_string(),
            input_digest: input_digest(input),
            requested: Vec::new(),
            results: BTreeMap::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        self.requested.push(key.to_string());
        let value = serde_json::to_value(value).expect("result types serialize");
        self.results.insert(key.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, JsonError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn factored(&self, key: &str) -> Result<Option<BinomialFactorization>, JsonError> {
        self.results
            .get(key)
            .map(|v| {
                let j: FactoredJson = serde_json::from_value(v.clone())?;
                BinomialFactorization::try_from(&j)
            })
            .transpose()
    }

    pub fn expanded(&self, key: &str) -> Result<Option<Expansion>, JsonError> {
        self.results
            .get(key)
            .map(|v| {
                let j: ExpandedJson = serde_json::from_value(v.clone())?;
                j.to_expansion()
            })
            .transpose()
    }
}
