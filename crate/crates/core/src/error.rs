use thiserror::Error;

use crate::exactnum::Rat;

/// Why a class failed to be pseudoeffective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseffCertificate {
    /// The class (or its positive part) meets a nef curve negatively.
    NefCurve { curve: String, value: Rat },
    /// The curves forced into the negative part do not span a negative
    /// definite lattice.
    IndefiniteSupport { curves: Vec<String> },
    /// The negative-part solve produced a negative coefficient.
    NegativeCoefficient { curve: String, value: Rat },
}

impl std::fmt::Display for PseffCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PseffCertificate::NefCurve { curve, value } => {
                write!(f, "intersection {value} with nef curve {curve}")
            }
            PseffCertificate::IndefiniteSupport { curves } => {
                write!(f, "support {{{}}} is not negative definite", curves.join(", "))
            }
            PseffCertificate::NegativeCoefficient { curve, value } => {
                write!(f, "negative coefficient {value} on {curve}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("discontinuous piecewise polynomial at t = {0}")]
    Discontinuous(Rat),
    #[error("unknown surface model: {0}")]
    UnknownModel(String),
    #[error("unknown divisor on {model}: {divisor}")]
    UnknownDivisor { model: String, divisor: String },
    #[error("unknown flag: {0}")]
    UnknownFlag(String),
    #[error("not pseudoeffective: {0}")]
    NotPseudoEffective(PseffCertificate),
    #[error("cone data possibly incomplete: {0}")]
    ConeDataIncomplete(String),
    #[error("not big and nef: {0}")]
    NotBigAndNef(String),
    #[error("invalid model {model}: {reason}")]
    InvalidModel { model: String, reason: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point {0} lies under the negative part but no restriction data was supplied")]
    MissingNegativeRestriction(String),
    #[error("point class {0} is not covered by any flag")]
    UncoveredPointClass(String),
    #[error("germ is Newton-degenerate; pass an explicit override to accept the diagonal rule")]
    NewtonDegenerate,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
