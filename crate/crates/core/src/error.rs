use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad category of an error, used by the command line to pick an exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input or an unmet precondition.
    Input,
    /// A structural fact that should hold for every admissible boundary was
    /// observed to fail.
    Invariant,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(VertexId, VertexId),
    #[error("self-loop at `{0}`")]
    SelfLoop(VertexId),
    #[error("unknown edge `{0}`-`{1}`")]
    UnknownEdge(VertexId, VertexId),
    #[error("ordering is not a permutation of the vertex set: {0}")]
    InvalidOrdering(String),
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("coefficient of `{0}` is not an integer")]
    NonIntegralCycle(VertexId),
    #[error("cannot blow down `{id}`: {reason}")]
    BlowDown { id: VertexId, reason: String },
    #[error("no marked curve C")]
    NoMarkedCurve,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("enumeration limit exceeded: {0}")]
    EnumerationLimit(String),
    #[error("invalid cycle literal: {0}")]
    CycleLiteral(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::DuplicateVertex(_) => "duplicate_vertex",
            Error::DuplicateEdge(..) => "duplicate_edge",
            Error::SelfLoop(_) => "self_loop",
            Error::UnknownEdge(..) => "unknown_edge",
            Error::InvalidOrdering(_) => "invalid_ordering",
            Error::NotNegativeDefinite => "not_negative_definite",
            Error::EmptyGraph => "empty_graph",
            Error::Disconnected => "disconnected",
            Error::NonIntegralCycle(_) => "non_integral_cycle",
            Error::BlowDown { .. } => "blow_down",
            Error::NoMarkedCurve => "no_marked_curve",
            Error::Precondition(_) => "precondition",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::InvalidMove(_) => "invalid_move",
            Error::EnumerationLimit(_) => "enumeration_limit",
            Error::CycleLiteral(_) => "cycle_literal",
            Error::InvariantViolation(_) => "invariant_violation",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvariantViolation(_) => ErrorClass::Invariant,
            _ => ErrorClass::Input,
        }
    }
}
