use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("maximum biclique enumeration exceeded the cap of {0} cliques")]
    CapExceeded(usize),

    #[error("vertex {0} has no colour list")]
    MissingList(usize),

    #[error("input is not a partial ({k},{ell})-dicolouring")]
    NotPartialKL { k: usize, ell: usize },

    #[error("greedy completion found no free colour for vertex {0}")]
    CompletionStuck(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no acyclic system of representatives exists")]
    NoAsr,

    #[error("vertex {0} is not dense for the requested side")]
    NotDense(usize),

    #[error("maximum degree {0} is too small for the random colouring trial (need at least 2)")]
    DegreeTooSmall(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
