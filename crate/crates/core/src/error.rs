use thiserror::Error;

use crate::geom::Degeneracy;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("points {0} and {1} violate general position: {2}")]
    DegeneratePair(String, String, Degeneracy),

    #[error("invalid point set: points {a} and {b} share {direction}")]
    InvalidPointSet {
        a: usize,
        b: usize,
        direction: Degeneracy,
    },

    #[error("vertex {vertex} has no neighbor in cone {cone}")]
    MissingEdge { vertex: usize, cone: usize },

    #[error("points {0:?} lie on the boundary of one empty square")]
    DegenerateCocircularity(Vec<usize>),

    #[error("points do not lie on consecutive sides of the square")]
    NotConsecutive,

    #[error("light path stuck at vertex {vertex}: cone {cone} is empty")]
    StuckVertex { vertex: usize, cone: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("invariant broken: {0}")]
    InvariantBroken(String),

    #[error("{0}-{1} is not an edge of the triangulation")]
    NotATriangulationEdge(usize, usize),

    #[error("graph is disconnected: no path between {0} and {1}")]
    Disconnected(usize, usize),

    #[error("constraint unsatisfiable: {0}")]
    ConstraintUnsatisfiable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// I/O failures, as opposed to bad input data or violated preconditions.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
