use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self loop on vertex {0}")]
    SelfLoop(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(String),
    #[error("{what}: requested {requested}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("bad jump list {0:?}")]
    BadJump(Vec<usize>),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("assignment is not a digraph map: {0}")]
    NotDigraphMap(String),
    #[error("chain has non-integer coefficients")]
    NonIntegerChain,
    #[error("chain is not in the path complex: {0}")]
    NotInOmega(String),
    #[error("chain does not decompose into minimal paths, residue {0}")]
    NotDecomposable(String),
    #[error("boundary leaves the span in degree {degree}: {witness}")]
    NotClosedUnderBoundary { degree: usize, witness: String },
    #[error("cellular boundary of {path} escapes the admissible span")]
    BoundaryEscapesSpan { path: String },
    #[error("boundary routes disagree on {path}")]
    BoundaryRoutesDisagree { path: String },
    #[error("{what}: budget of {budget} exhausted after {partial} steps")]
    BudgetExceeded {
        what: &'static str,
        budget: u64,
        partial: u64,
    },
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
