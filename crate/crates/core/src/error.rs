use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("duplicate element {0} in finite set")]
    DuplicateElement(String),
    #[error("function is not total: no value for {0}")]
    NotTotal(String),
    #[error("value {value} is not an element of the codomain (at {at})")]
    NotInCodomain { at: String, value: String },
    #[error("element {0} is not in the domain")]
    NotInDomain(String),
    #[error("search space of {size} exceeds cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("spans are not structurally isomorphic: {0}")]
    NotStructurallyIsomorphic(String),
    #[error("instance is not well-formed: {0}")]
    NotWellFormed(String),
    #[error("skew monoidale axioms fail: {0}")]
    AxiomsFail(String),
    #[error("R-structure conditions fail: {0}")]
    ConditionsFail(String),
    #[error("simplicial set depth {depth} is too small (need at least {needed})")]
    DepthTooSmall { depth: usize, needed: usize },
    #[error("monoid laws fail: {0}")]
    MonoidLawsFail(String),
    #[error("not a monoid morphism: {0}")]
    NotAMonoidMorphism(String),
    #[error("malformed shape: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
