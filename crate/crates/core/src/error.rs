use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular over Z/2")]
    SingularMatrix,
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("operation needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),
    #[error("invalid vertex name `{0}`")]
    BadName(String),
    #[error("not a double-occurrence word: {0}")]
    BadWord(String),
    #[error("graph has {n} vertices, more than the bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("not a graph-knot: corank(A(G)+E) = {corank}")]
    NotAKnot { corank: usize },
    #[error("move `{mv}` not applicable: {reason}")]
    MoveNotApplicable { mv: String, reason: String },
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}
