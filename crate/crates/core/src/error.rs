use alloc::boxed::Box;
use alloc::string::String;

use crate::poly::CliffordPoly;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("ambient dimension {0} outside the supported range 1..=8")]
    InvalidDimension(usize),
    #[error("index {index} out of range for dimension {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("blade indices must be strictly increasing")]
    UnsortedBlade,
    #[error("grade {grade} out of range for dimension {m}")]
    GradeOutOfRange { grade: usize, m: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a pure 1-vector")]
    NotAVector,
    #[error("rotor factor is not of unit norm")]
    NotUnit,
    #[error("word letters must alternate")]
    NonAlternatingWord,
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("invalid word `{0}`")]
    InvalidWord(String),
    #[error("polynomial is not in the span of the basis")]
    NotInSpan,
    #[error("subspaces do not share an ambient space")]
    AmbientMismatch,
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("verification budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(Box<Violation>),
}

/// A failed certification: where it happened and a polynomial witnessing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub context: String,
    pub message: String,
    pub witness: Option<CliffordPoly>,
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {}", self.context, self.message)
    }
}

impl Error {
    pub(crate) fn violation(
        context: impl Into<String>,
        message: impl Into<String>,
        witness: Option<CliffordPoly>,
    ) -> Self {
        Error::TheoremViolation(Box::new(Violation {
            context: context.into(),
            message: message.into(),
            witness,
        }))
    }
}
