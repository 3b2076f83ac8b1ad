use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {0} does not exist")]
    EdgeOutOfRange(usize),

    #[error("edge weight must be nonzero")]
    ZeroWeight,

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("underlying multigraphs differ")]
    UnderlyingGraphsDiffer,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("algebraic distance is undefined for u = v")]
    SameVertex,

    #[error("graph is not {0}-wide")]
    NotWide(u64),

    #[error("pair ({0}, {1}) is not on a common negative {2}-cycle")]
    NotOnNegativeCycle(usize, usize, u64),

    #[error("malformed triangle set: {0}")]
    MalformedTriangles(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("malformed homomorphism witness: {0}")]
    MalformedWitness(String),

    #[error("generator exhausted its budget of {0} attempts")]
    BudgetExhausted(usize),

    /// A check whose failure would contradict a proven statement.
    #[error("verification failure: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}
