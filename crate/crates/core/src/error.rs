//! Crate-wide error type.

use crate::set::VertexSet;
use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Precondition violations (wrong graph class, foreign vertices, malformed
/// triplets) are ordinary errors; resource guards get their own variant so
/// callers can distinguish "too big" from "invalid"; `Internal` flags a
/// broken invariant that indicates a defect in this crate, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe of {0} vertices exceeds the supported maximum of {1}")]
    UniverseTooLarge(usize, usize),

    #[error("vertex {0} is outside the graph's vertex set")]
    ForeignVertex(usize),

    #[error("set {0:?} is not contained in the vertex set")]
    ForeignSet(VertexSet),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate or conflicting edge between {0} and {1}")]
    DuplicateEdge(usize, usize),

    #[error("operation requires an undirected graph")]
    NotUndirected,

    #[error("operation requires a directed acyclic graph")]
    NotDag,

    #[error("operation requires a chain graph (no semi-directed cycle)")]
    NotChainGraph,

    #[error("operation requires a chordal graph")]
    NotChordal,

    #[error("graph is not an edge-subgraph: {0} edges of the base are missing")]
    MissingBaseEdges(usize),

    #[error("{0:?} is not a chain component of the graph")]
    NotAChainComponent(VertexSet),

    #[error("no directed edge runs from {0:?} to {1:?}")]
    NoMetaArrow(VertexSet, VertexSet),

    #[error("the two sides of a conditional independence triplet must be non-empty")]
    EmptyTripletPart,

    #[error("sets of a triplet must be pairwise disjoint")]
    OverlappingTriplet,

    #[error("operands live over different universes")]
    UniverseMismatch,

    #[error("imset coefficient overflow")]
    Overflow,

    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
