use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is not square-free: square {0:?}")]
    NotSquareFree([usize; 4]),

    #[error("graph is not Berge: {kind} {cycle:?}")]
    NotBerge { kind: OddCycleKind, cycle: Vec<usize> },

    /// An input precondition does not hold (usually means the graph is not
    /// square-free).
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    /// No bad-count-reducing recoloring exists; only possible when the input
    /// is not a square-free Berge graph or the partition is not good.
    #[error("recoloring failed, input is not square-free Berge: {0}")]
    BergeViolation(String),

    #[error("no proper coloring with {target} colors exists")]
    Infeasible { target: usize },

    #[error("invalid construction: {0}")]
    Spec(String),

    #[error("generation exhausted after {attempts} attempts")]
    GenerationExhausted { attempts: usize },

    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, n: usize, cap: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An internal invariant failed. Always a bug or a corrupted input that
    /// slipped past the entry checks.
    #[error("internal invariant violated: {0}")]
    InternalViolation(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddCycleKind {
    OddHole,
    OddAntihole,
}

impl std::fmt::Display for OddCycleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OddCycleKind::OddHole => f.write_str("odd hole"),
            OddCycleKind::OddAntihole => f.write_str("odd antihole"),
        }
    }
}
