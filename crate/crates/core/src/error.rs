use thiserror::Error;

use crate::game::{Player, VertexId, Violation};

/// Broad category of a failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The caller handed over malformed data.
    Input,
    /// The data is well formed but outside the class a solver accepts.
    Precondition,
    /// Something that the theory rules out happened anyway.
    Invariant,
}

#[derive(Debug, Error)]
pub enum SsgError {
    #[error("invalid game: {}", join_violations(.0))]
    InvalidGame(Vec<Violation>),

    #[error("vertex {vertex} is not owned by {owner}")]
    NotOwned { vertex: VertexId, owner: Player },

    #[error("{successor} is not a successor of {vertex}")]
    NotASuccessor { vertex: VertexId, successor: VertexId },

    #[error("{owner} strategy is undefined at vertex {vertex}")]
    PartialStrategy { owner: Player, vertex: VertexId },

    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),

    #[error("vertex {0} is already a sink")]
    AlreadySink(VertexId),

    #[error("sink value {0} lies outside [0, 1]")]
    ValueOutOfRange(String),

    #[error("value vector has {found} entries, game has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vector is not locally optimal ({0} violations)")]
    NotLocallyOptimal(usize),

    #[error("vertex {vertex} cannot be switched to {successor}: not an improving move")]
    NotSwitchable { vertex: VertexId, successor: VertexId },

    #[error("game is not stopping: a strategy pair can trap play in {} vertices", .witness.len())]
    NotStopping { witness: Vec<VertexId> },

    #[error("game is not {0}")]
    WrongClass(&'static str),

    #[error("{0:?} is not a feedback vertex set")]
    NotFeedbackSet(Vec<VertexId>),

    #[error("{owner} has {count} strategies, above the enumeration cap of {cap}")]
    EnumerationCap { owner: Player, count: String, cap: u64 },

    #[error("no rational with denominator <= {bound} in [{lo}, {hi}]")]
    NoCandidate { lo: String, hi: String, bound: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("inconsistent generator spec: {0}")]
    BadSpec(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl SsgError {
    pub fn class(&self) -> ErrorClass {
        use SsgError::*;
        match self {
            InvalidGame(_)
            | NotOwned { .. }
            | NotASuccessor { .. }
            | PartialStrategy { .. }
            | UnknownVertex(_)
            | AlreadySink(_)
            | ValueOutOfRange(_)
            | LengthMismatch { .. }
            | NotSwitchable { .. }
            | Parse { .. }
            | BadSpec(_) => ErrorClass::Input,
            NotLocallyOptimal(_)
            | NotStopping { .. }
            | WrongClass(_)
            | NotFeedbackSet(_)
            | EnumerationCap { .. }
            | NoCandidate { .. } => ErrorClass::Precondition,
            Invariant(_) => ErrorClass::Invariant,
        }
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        SsgError::Invariant(msg.into())
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = SsgError> = std::result::Result<T, E>;
