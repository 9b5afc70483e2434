//! Error type shared across the crate.

use crate::algebra::ValidationReport;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("scalar arithmetic across different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds the supported bound 2^32")]
    ModulusTooLarge(u64),
    #[error("malformed shape: {0}")]
    Shape(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("element does not belong to this algebra: {0}")]
    AlgebraMismatch(String),
    #[error("element is not parity-homogeneous")]
    MixedParity,
    #[error("matrix entries outside the blocks allowed by parity {0}")]
    ParityBlockViolation(String),
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    #[error("subspace has no parity-pure basis")]
    NotGraded,
    #[error("element does not lie in the derived subalgebra")]
    NotInDerived,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("map is not a triple derivation")]
    NotTripleDerivation,
    #[error("map is not a triple homomorphism")]
    NotTripleHom,
    #[error("odd maps are not supported here: {0}")]
    OddMapUnsupported(String),
    #[error("center is nonzero; decomposition requires a centerless algebra")]
    CenterNotZero,
    #[error("lemma check failed: {0}")]
    LemmaViolation(String),
    #[error("unknown builtin name: {0}")]
    UnknownName(String),
    #[error("bad builtin parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("conflicting bracket entries for pair ({0}, {1})")]
    SkewConflict(String, String),
    #[error("structure table violates the superalgebra axioms ({} violations)", report.violations.len())]
    AxiomViolation { report: Box<ValidationReport> },
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("field coercion refused: {0}")]
    CoercionRefused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
