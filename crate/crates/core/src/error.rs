use thiserror::Error;

use crate::place::Place;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants split into two families: precondition failures (bad input, a
/// case the method cannot certify) and internal inconsistencies (an identity
/// that must hold exactly did not). [`Error::is_internal`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("derivative vanishes mod p at the starting root: {0}")]
    SimpleRootViolated(String),
    #[error("element is not a p-adic unit (valuation {0})")]
    NotAUnit(i64),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not squarefree over Q")]
    NotSquarefree,
    #[error("factor degrees at {place} cannot be certified: {reason}")]
    Inconclusive { place: Place, reason: String },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("splitting-field component did not vanish: {0}")]
    SplittingDrift(String),
    #[error("characteristic polynomial has repeated roots")]
    NotRegularSemisimple,
    #[error("degree {degree} is not divisible by {divisor}")]
    DegreeMismatch { degree: usize, divisor: usize },
    #[error("class does not transfer at {0}")]
    NotTransferable(Place),
    #[error("generator index {k} out of range for rank {n}")]
    RankRange { n: usize, k: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parameters are equal; nothing separates them")]
    NotSeparable,
    #[error("witness search exhausted its budget: {0}")]
    SearchFailed(String),
    #[error("character is nontrivial on the rational points of the center")]
    IncompatibleCharacter,
    #[error("invalid finite model: {0}")]
    InvalidModel(String),
    #[error("matched orbit {orbit} differs: {left} vs {right}")]
    TermMismatch {
        orbit: String,
        left: String,
        right: String,
    },
    #[error("unmatched orbit {orbit} on the {side} side contributes {value}")]
    NonVanishingUnmatched {
        orbit: String,
        side: String,
        value: String,
    },
    #[error("ramified local character at {0} meets a defaulted component")]
    RamifiedAtDefault(Place),
    #[error("component is not rational: {0}")]
    NotRational(String),
    #[error("element is not an idele: {0}")]
    NotIdele(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name, used in the CLI error envelope.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Precondition(_) => "PreconditionError",
            Error::SimpleRootViolated(_) => "SimpleRootViolated",
            Error::NotAUnit(_) => "NotAUnit",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::NotSquarefree => "NotSquarefree",
            Error::Inconclusive { .. } => "Inconclusive",
            Error::NotInvertible => "NotInvertible",
            Error::SplittingDrift(_) => "SplittingDrift",
            Error::NotRegularSemisimple => "NotRegularSemisimple",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::NotTransferable(_) => "NotTransferable",
            Error::RankRange { .. } => "RankRange",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotSeparable => "NotSeparable",
            Error::SearchFailed(_) => "SearchFailed",
            Error::IncompatibleCharacter => "IncompatibleCharacter",
            Error::InvalidModel(_) => "InvalidModel",
            Error::TermMismatch { .. } => "TermMismatch",
            Error::NonVanishingUnmatched { .. } => "NonVanishingUnmatched",
            Error::RamifiedAtDefault(_) => "RamifiedAtDefault",
            Error::NotRational(_) => "NotRational",
            Error::NotIdele(_) => "NotIdele",
            Error::Schema(_) => "SchemaViolation",
            Error::Internal(_) => "InternalInconsistency",
        }
    }

    /// True when the error signals a broken identity rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::SplittingDrift(_) | Error::SearchFailed(_) | Error::Internal(_)
        )
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }
}
