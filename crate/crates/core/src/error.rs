use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("node {node} is out of range for a graph with {nodes} nodes")]
    NodeOutOfRange { node: NodeId, nodes: usize },

    #[error("node {0} is not in the observed frontier")]
    NotInFrontier(NodeId),

    #[error("graph is not connected")]
    Disconnected,

    #[error("rewiring gave up after {attempts} attempts with {accepted} of {target} swaps accepted")]
    RewireExhausted {
        attempts: u64,
        accepted: u64,
        target: u64,
    },

    #[error("random walk exceeded {0} hops without reaching an unrecruited node")]
    HopLimit(u64),

    #[error("graph has {nodes} nodes; exact taboo evaluation is limited to {limit} (use the stationary approximation)")]
    TooLarge { nodes: usize, limit: usize },

    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),

    #[error("quantity is undefined: {0}")]
    Undefined(String),

    #[error("no overlapping steps between the compared curves")]
    EmptyOverlap,

    #[error("run {run} failed: {source}")]
    Run {
        run: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
