use thiserror::Error;

/// Errors raised by the algebra and geometry layers.
///
/// Variants split into two families: malformed input (wrong shapes, parse
/// failures, wrong degrees) and violated geometric preconditions (a point
/// that is a vertex, a pencil that is not generic, ...). [`Error::is_precondition`]
/// tells them apart; the CLI maps them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("expected a homogeneous polynomial of degree {expected}")]
    NotHomogeneous { expected: u32 },

    #[error("expected a multivector of degree {expected}, got degree {got}")]
    WrongMultivectorDegree { expected: usize, got: usize },

    #[error("all homogeneous coordinates are zero")]
    ZeroPoint,

    #[error("non-finite coordinate in a floating-point point")]
    NonFinite,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("quadrics of a pencil must be linearly independent")]
    DependentQuadrics,

    #[error("need at least {needed} pencils, got {got}")]
    TooFewPencils { needed: usize, got: usize },

    #[error("polar plane vanishes identically: the point is a vertex of {quadric}")]
    VertexPoint { quadric: String },

    #[error("degenerate point: {cause}")]
    DegeneratePoint { cause: String },

    #[error("point does not lie on the base curve")]
    NotOnCurve,

    #[error("point is a singular point of the base curve")]
    SingularPoint,

    #[error("pencil is not generic: {0}")]
    NonGenericPencil(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for geometric precondition failures, false for malformed input.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::VertexPoint { .. }
                | Error::DegeneratePoint { .. }
                | Error::NotOnCurve
                | Error::SingularPoint
                | Error::NonGenericPencil(_)
                | Error::Inconsistent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
