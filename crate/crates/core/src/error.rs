use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cycle detected")]
    CycleDetected,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {id} out of range for graph with {n} vertices")]
    OutOfRange { id: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a path cover: vertex {0} is uncovered")]
    NotACover(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid flow: {0}")]
    InvalidFlow(String),
    #[error("path id {id} out of range 0..{t}")]
    BadPathId { id: usize, t: usize },
    #[error("vertex {vertex} has in-neighbor {neighbor} that was not inserted yet")]
    OrderViolation { vertex: usize, neighbor: usize },
    #[error("flow is not minimum: a decrementing path exists")]
    NotMinimum,
    #[error("edge ({0}, {1}) is not used by any path of the cover")]
    EdgeUncovered(usize, usize),
    #[error("not a red cycle: {0}")]
    NotARedCycle(String),
    #[error("graph too large for the oracle: {n} > {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
