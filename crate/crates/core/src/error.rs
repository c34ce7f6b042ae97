use thiserror::Error;

/// Errors produced by the library.
///
/// Variants split into two broad groups: malformed input (files,
/// expressions) and violated preconditions (caps, chain conditions,
/// structural requirements). The CLI maps the former to exit code 1 and
/// the latter to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid size {size} for standard graph kind {kind}")]
    InvalidStandardSize { kind: &'static str, size: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("assignment is not total: vertex `{0}` has no image")]
    MissingAssignment(String),

    #[error("vertex map does not send arrow {from} -> {to} to an arrow or an equality")]
    NotAGraphMap { from: String, to: String },

    #[error("expected an {expected} motif family")]
    WrongPointedness { expected: &'static str },

    #[error("motif family is empty")]
    EmptyFamily,

    #[error("construction would enumerate {bound} candidates, above the cap of {cap}")]
    CapExceeded { bound: u128, cap: u64 },

    #[error("family chain violated between positions {lower} and {upper}: family {lower} is not covered by family {upper}")]
    ChainViolation { lower: usize, upper: usize },

    #[error("size cap {0} too large for exhaustive motif extraction (maximum is 4)")]
    OmegaCapTooLarge(usize),

    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("diagonal weight of `{0}` must be finite")]
    InfiniteDiagonal(String),

    #[error(
        "weight matrix must be square with one row per point (expected {expected} rows/columns)"
    )]
    BadMatrixShape { expected: usize },

    #[error("network is not symmetric: w({x},{y}) differs from w({y},{x})")]
    NotSymmetric { x: String, y: String },

    #[error("strong triangle inequality fails on the triple ({x},{y},{z})")]
    NotUltrametric { x: String, y: String, z: String },

    #[error("weights must be finite here, but w({x},{y}) is +inf")]
    InfiniteWeight { x: String, y: String },

    #[error("not a correspondence: {0}")]
    InvalidCorrespondence(String),

    #[error("instance with {pairs} candidate pairs exceeds the exact-search cap of {cap}; use the heuristic upper bound instead")]
    ExactCapExceeded { pairs: usize, cap: usize },

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("cannot load motif family `{reference}`: {message}")]
    FamilyLoad { reference: String, message: String },

    #[error("invalid {format}: {message}")]
    Format {
        format: &'static str,
        message: String,
    },
}

impl Error {
    /// True for errors that indicate malformed input rather than a
    /// violated precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Format { .. } | Error::FamilyLoad { .. }
        )
    }
}

/// A functor-expression parse failure, with the byte offset of the
/// offending token and the tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: expected {}, found {found}", expected.join(" | "))]
pub struct ParseError {
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}
