use thiserror::Error;

/// Everything that can go wrong in the library. Singular steps are reported
/// as typed variants, never as infinities or NaNs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("square root of a negative number")]
    NegativeInput,

    #[error("state lies on the singular axis of the map at n = {n}")]
    SingularAxis { n: i64 },

    #[error("fixed point is complex: 1 + 12*alpha*r < 0")]
    ComplexRoot,

    #[error("alpha-dP1 has no genuine real period-2 orbit for alpha >= 0")]
    NotGenuine,

    #[error("point lies on the invariant plane at infinity (u = 0)")]
    PlaneAtInfinity,

    #[error("singular step: {0} vanishes")]
    SingularStep(&'static str),

    #[error("s0 = {0} belongs to the singular period-3 orbit")]
    SingularFamilyMember(String),

    #[error("sequence of length {len} cannot support {contractions} contractions (need at least {needed})")]
    InsufficientLength {
        len: usize,
        contractions: usize,
        needed: usize,
    },

    #[error("quadrature for moment {index} did not reach the requested tolerance after {levels} levels")]
    QuadratureNonConvergence { index: usize, levels: usize },

    #[error("series has no interior minimum")]
    NoInteriorMinimum,

    #[error("square root is not representable exactly in this scalar type")]
    IrrationalRoot,

    #[error("order-by-order solve failed at degree {degree}: {reason}")]
    Unsolvable { degree: usize, reason: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
