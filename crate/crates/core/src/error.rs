use thiserror::Error;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("unknown letter `{0}`")]
    UnknownLetter(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("Kleene plus applied to a series with nonzero constant term {0}")]
    ImproperKleene(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("diagram has floating components; evaluate it first")]
    NotViewable,

    #[error("target is not in the span of the basis")]
    NotInSpan,

    #[error("circle series is not symmetric: α({u}·{v}) ≠ α({v}·{u})")]
    NotSymmetric { u: String, v: String },

    #[error("series is not recognizable within the Hankel cap {0}")]
    ExceededCap(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
