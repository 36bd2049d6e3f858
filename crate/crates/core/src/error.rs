use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised by graph construction, coloring manipulation and the oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph6 decode error: {0}")]
    Graph6(String),

    #[error("graph is not an HZ candidate: {0}")]
    NotHzCandidate(String),

    #[error("infeasible O_delta parameters: {0}")]
    InfeasibleSpec(String),

    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),

    #[error("no edge between {0} and {1}")]
    NoSuchEdge(Vertex, Vertex),

    #[error("invalid color {color} (palette is 1..={k})")]
    InvalidColor { color: u8, k: u8 },

    #[error("improper coloring: {0}")]
    Improper(String),

    #[error("stale chain: coloring changed since the chain was extracted")]
    StaleChain,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("script step {index} failed: {reason}")]
    ScriptStep { index: usize, reason: String },

    #[error("vertex {0} is not on the chain")]
    NotOnChain(Vertex),

    #[error("set is not elementary: {0}")]
    NotElementary(String),

    #[error("oracle node budget of {0} exhausted")]
    BudgetExhausted(u64),

    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),

    #[error("coloring JSON: {0}")]
    Json(String),

    #[error("enumeration bound {0} is above the supported maximum")]
    EnumerationTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
