use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge {0:?} does not have exactly {1} vertices")]
    WrongArity(Vec<Vertex>, usize),
    #[error("vertex {0} is not in the vertex set")]
    UnknownVertex(Vertex),
    #[error("edge {0:?} listed twice")]
    DuplicateEdge(Vec<Vertex>),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("vertex sets overlap")]
    Overlap,
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("fewer than {0} distinct (k-1)-sets")]
    Degenerate(usize),
    #[error("uniformity mismatch: {0} vs {1}")]
    UniformityMismatch(usize, usize),
    #[error("edge {0:?} used twice")]
    EdgeCollision(Vec<Vertex>),
    #[error("window {0:?} is not an edge of the host")]
    NotAnEdge(Vec<Vertex>),
    #[error("window {0:?} repeats an earlier edge")]
    RepeatedEdge(Vec<Vertex>),
    #[error("tour wrap condition fails")]
    BadWrap,
    #[error("a tour has no ends")]
    TourHasNoEnds,
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("tuple has length {0}, expected {1}")]
    BadTupleLength(usize, usize),
    #[error("no end of the first trail reverses an end of the second")]
    NoMatchingEnds,
    #[error("vertex {0} has degree {1}, not divisible by {2}")]
    DegreeNotDivisible(Vertex, usize, usize),
    #[error("anchor vertices collide: {0}")]
    AnchorCollision(String),
    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("too dense: {edges} edges with {vertices} vertices and k = {k}")]
    TooDense { edges: usize, vertices: usize, k: usize },
    #[error("decomposition is not balanced")]
    NotBalanced,
    #[error("residual has the wrong shape: {0}")]
    MalformedResidual(String),
    #[error("map is not an edge-bijective homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("graph is not divisible: {0}")]
    NotDivisible(String),
    #[error("anchor is not an edge of F")]
    AnchorNotEdge,
    #[error("oracle failed: {0}")]
    OracleFailure(String),
    #[error("host too sparse: {0}")]
    HostTooSparse(String),
    #[error("vortex sampling failed at level {level}: observed {observed}, needed {needed}")]
    VortexFailure { level: usize, observed: usize, needed: f64 },
    #[error("cycle length {0} is divisible by k = {1}")]
    DivisibleLength(usize, usize),
    #[error("instance too large: {0}")]
    SizeTooLarge(String),
    #[error("parameters infeasible: {0}")]
    ParameterInfeasible(String),
    #[error("no perfect matching: {0}")]
    MatchingNotFound(String),
    #[error("extension process failed at index {index}: {reason}")]
    ExtensionFailure { index: usize, reason: String },
    #[error("cover-down failed at stage {stage}: {reason}")]
    CoverDownFailure { stage: usize, reason: String },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Result of a budgeted search; `None` means the search space was exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    None,
    BudgetExhausted,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => Option::None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::None => Outcome::None,
            Outcome::BudgetExhausted => Outcome::BudgetExhausted,
        }
    }
}
