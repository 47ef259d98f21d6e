use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("vertex mismatch: {0}")]
    VertexMismatch(String),
    #[error("operands come from different graphs of groups")]
    GraphMismatch,
    #[error("invalid graph of groups: {0}")]
    InvalidGraph(String),
    #[error("not a free product: {0}")]
    NotFreeProduct(String),
    #[error("transplant is only defined in degree >= 2 (got {0})")]
    DegreeTooLow(usize),
    #[error("cochain degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("function is not odd: {0}")]
    NotOdd(String),
    #[error("cannot canonicalize orbit: {0}")]
    UnsupportedOrbit(String),
    #[error("theta must be nonnegative")]
    NegativeTheta,
    #[error("epsilon must be positive")]
    NonpositiveEpsilon,
    #[error("chain is not a (relative) cycle")]
    NotACycle,
    #[error("pair (u, v) does not satisfy the cone cycle condition")]
    NotAConeCycle,
    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("interior boundary cannot be filled on the interfaces")]
    Unfillable,
    #[error("malformed linear program: {0}")]
    MalformedProblem(String),
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
}
