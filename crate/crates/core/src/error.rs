use thiserror::Error;

use crate::ordering::Ordering;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop ({0}, {0}) is not allowed in a simple graph")]
    SelfLoop(usize),

    #[error("sequence of length {len} is not a permutation of 0..{n}")]
    NotAPermutation { len: usize, n: usize },

    #[error("pattern has {size} vertices, more than the supported maximum of {max}")]
    PatternTooLarge { size: usize, max: usize },

    #[error("{what} needs n <= {max} but the graph has {n} vertices{hint}")]
    SizeGuard {
        what: &'static str,
        n: usize,
        max: usize,
        hint: &'static str,
    },

    #[error("no repeated ordering within a budget of {budget} sweeps")]
    NoConvergence { budget: usize, trace: Vec<Ordering> },

    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),

    #[error("unknown graph name `{0}`")]
    UnknownName(String),

    #[error("unknown class tag `{0}`")]
    UnknownTag(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rejection sampler exhausted after {draws} draws without a `{predicate}` sample")]
    RejectionExhausted { draws: usize, predicate: String },

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("malformed edge list: {0}")]
    EdgeList(String),
}
