use thiserror::Error;

/// Errors raised while building or evaluating ball polytopes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("diameter violation: distance {distance} exceeds 1{}", pair_suffix(.pair))]
    DiameterViolation {
        pair: Option<(usize, usize)>,
        distance: f64,
    },

    #[error("vertex set is not extremal: {found} diametric pairs, expected {expected}")]
    NotExtremal { found: usize, expected: usize },

    #[error("expected {expected} dual edge pairs, found {found}")]
    WrongPairCount { found: usize, expected: usize },

    #[error("at least 4 vertices are required, got {0}")]
    TooFewVertices(usize),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("circles do not intersect")]
    NoIntersection,

    #[error("{pairs} dual pairs exceed the enumeration limit of {limit}")]
    TooManyPairs { pairs: usize, limit: usize },

    #[error("cannot order the face opposite vertex {vertex}: {reason}")]
    FaceCycle { vertex: usize, reason: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("EDGES section disagrees with the computed diameter graph: {0}")]
    ValidationMismatch(String),

    #[error("ball system has no centers")]
    EmptySystem,

    #[error("diameter graph is not a wheel: {0}")]
    NotAWheel(String),

    #[error("infeasible start: {0}")]
    InfeasibleStart(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn pair_suffix(pair: &Option<(usize, usize)>) -> String {
    match pair {
        Some((i, j)) => format!(" between vertices {i} and {j}"),
        None => String::new(),
    }
}

impl Error {
    /// True for errors caused by invalid input geometry or combinatorics, as
    /// opposed to internal or I/O failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DiameterViolation { .. }
                | Error::NotExtremal { .. }
                | Error::WrongPairCount { .. }
                | Error::TooFewVertices(_)
                | Error::FaceCycle { .. }
                | Error::Parse { .. }
                | Error::ValidationMismatch(_)
                | Error::NotAWheel(_)
                | Error::InfeasibleStart(_)
        )
    }
}

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

pub type Result<T> = std::result::Result<T, Error>;
