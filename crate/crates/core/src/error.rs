use thiserror::Error;

/// Errors raised by the metric-polytope library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: bad node indices, mismatched dimensions, etc.
    #[error("invalid input: {0}")]
    Input(String),

    /// Text that could not be parsed (rationals, facet names, vertex files).
    #[error("parse error: {0}")]
    Parse(String),

    /// A point violates one of the defining inequalities.
    #[error("point is outside the metric polytope: violates {facet} (slack {slack})")]
    Infeasible { facet: String, slack: String },

    /// A point was required to be a vertex but is not: its tight normals
    /// have rank below the dimension.
    #[error("not a vertex ({tight} tight facets)")]
    NotAVertex {
        tight: usize,
        rank: usize,
        dimension: usize,
    },

    /// A ray shot from a vertex never pierces a facet.
    #[error("ray is unbounded: no facet blocks it")]
    UnboundedRay,

    /// The requested computation is outside the supported size range.
    #[error("unsupported: {0}")]
    Capability(String),

    /// A graph operation found two vertices with no path between them.
    #[error("graph is disconnected: vertex {0} cannot reach vertex {1}")]
    Disconnected(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
