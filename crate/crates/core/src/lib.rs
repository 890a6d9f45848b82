//! Exact invariants of graph links computed from splice diagrams: the signed
//! multivariable Conway potential function, the Alexander and Conway
//! polynomials, split and fibered classification, and a randomized harness
//! checking the identities these invariants satisfy.

pub mod diagram;
pub mod invariants;
pub mod json;
pub mod laurent;
pub mod linking;
pub mod verify;

pub use diagram::{
    parse, seifert_example, serialize, validate, DiagramBuilder, DiagramError, ParseError,
    SpliceDiagram, ValidationError, VertexId, VertexKind,
};
pub use invariants::{InvariantError, Potential, SignCounts};
pub use json::{ExpandedJson, FactoredJson, JsonError, OutputEnvelope};
pub use laurent::{
    BinomialFactorization, CancelToken, Denotation, Expansion, ExponentVector, Invert,
    LaurentError, LaurentPoly, Sign,
};
pub use linking::{LinkingData, LinkingError};
pub use verify::{CheckReport, GeneratorConfig, Outcome, SuiteSummary, VerifyError};
