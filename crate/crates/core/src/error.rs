use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("invalid coefficient ring: {0}")]
    InvalidRing(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("invalid ring map: {0}")]
    InvalidMap(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("presentation mismatch")]
    PresentationMismatch,
    #[error("exponent cap exceeded (each exponent must stay below 65536)")]
    ExponentCap,
    #[error("word of length {len} exceeds the reduction cap of {cap} letters")]
    WordTooLong { len: usize, cap: usize },
    #[error("word is not standard: {0}")]
    NotStandard(String),
    #[error("zero coefficient where a nonzero one is required")]
    ZeroCoefficient,
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("catalog entry `{name}`: {msg}")]
    CatalogParams { name: String, msg: String },
    #[error("homomorphism: {0}")]
    Hom(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
