use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator id {0} is not part of the signature")]
    UnknownGeneratorId(usize),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has arity {arity}; arity must be at least 1")]
    BadGeneratorArity { name: String, arity: u32 },
    #[error("vertex `{name}` expects {expected} children, found {found}")]
    ChildCountMismatch { name: String, expected: usize, found: usize },
    #[error("leaf labels must be exactly 1..={arity}, each once; found {found:?}")]
    BadLeafLabels { arity: u32, found: Vec<u32> },
    #[error("nonsymmetric tree must read its leaves left to right as 1..n; found {0:?}")]
    NotPlanar(Vec<u32>),
    #[error("composition data invalid: {0}")]
    BadComposition(String),
    #[error("invalid subtree embedding: {0}")]
    BadEmbedding(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(u32, u32),
    #[error("operation needs a nonzero element")]
    ZeroElement,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid ordering: {0}")]
    BadOrder(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("arity {requested} exceeds the certified bound {bound}")]
    BeyondBound { requested: u32, bound: u32 },
    #[error("unary generators make component {0} infinite")]
    InfiniteComponent(u32),
    #[error("{0}")]
    NotBinaryQuadratic(String),
    #[error("incompatible inputs: {0}")]
    Incompatible(String),
    #[error("series error: {0}")]
    Series(String),
    #[error("malformed compatibility data: {0}")]
    BadCompatData(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, OperadError>;
