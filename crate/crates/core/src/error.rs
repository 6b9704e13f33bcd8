use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("({0},{1}) is not an edge")]
    UnknownEdge(String, String),
    #[error("vertex `{0}` has no outgoing edge (dead ends are not allowed in this game)")]
    DeadEnd(String),
    #[error("invalid objective: {0}")]
    Objective(String),
    #[error("invalid assumption: {0}")]
    Assumption(String),
    #[error("self-loop at `{0}`; split self-loops first")]
    SelfLoop(String),
    #[error("{what} is {actual}, above the bound {bound}")]
    Bound {
        what: &'static str,
        bound: u64,
        actual: u64,
    },
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
