use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arc ({0}, {0}) is a loop")]
    Loop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("arc ({0}, {1}) opposes the arc ({1}, {0})")]
    OppositeArc(usize, usize),
    #[error("vertex {vertex} is out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("order {0} exceeds the supported maximum of 64 vertices")]
    OrderTooLarge(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not unicyclic ({edges} edges on {n} vertices, connected: {connected})")]
    NotUnicyclic {
        n: usize,
        edges: usize,
        connected: bool,
    },
    #[error("vertex {0} is not a pendant vertex")]
    NotPendant(usize),
    #[error("graph has no pendant vertex")]
    NoPendant,
    #[error("graph has odd order {0}")]
    OddOrder(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("order {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
