use thiserror::Error;

use crate::crochet::Stitch;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point violates the open unit disk / ball membership invariant.
    #[error("point lies outside the model domain: |p|^2 = {norm_sq}")]
    OutsideModel { norm_sq: f64 },

    /// Generic precondition violation described by the message.
    #[error("{0}")]
    Domain(String),

    /// A construction would produce more triangles than the configured budget.
    #[error("triangle budget exceeded: construction needs more than {budget} triangles")]
    BudgetExceeded { budget: usize },

    /// Two edge endpoints coincide, so the edge direction is undefined.
    #[error("degenerate edge between vertices {a} and {b}: endpoints coincide")]
    DegenerateEdge { a: u32, b: u32 },

    /// A vertex id is not present in the mesh.
    #[error("unknown vertex id {0}")]
    UnknownVertex(u32),

    /// A yarn estimate was requested without pricing every stitch kind.
    #[error("no yarn length provided for stitch kind {0:?}")]
    MissingStitchLength(Stitch),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
