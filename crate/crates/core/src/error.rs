use thiserror::Error;

/// Errors raised by constructors, validators and the trivialization pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("InvalidOrder: order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("MalformedTable: {0}")]
    MalformedTable(String),

    #[error("MalformedMap: {0}")]
    MalformedMap(String),

    #[error("MalformedStructure: {0}")]
    MalformedStructure(String),

    #[error("BadBaseId: base id {id} out of range (base has {base} elements)")]
    BadBaseId { id: usize, base: usize },

    #[error("BadCarrier: arrow {carrier} runs {actual:?}, expected {expected:?}")]
    BadCarrier {
        carrier: usize,
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("NotComposable: ({0}, {1}) is not in the composable set")]
    NotComposable(usize, usize),

    #[error("InvalidGroup: {0}")]
    InvalidGroup(String),

    #[error("InvalidMorphism: {0}")]
    InvalidMorphism(String),

    #[error("EndpointMismatch: {0}")]
    EndpointMismatch(String),

    #[error("InvalidInput: {0}")]
    InvalidInput(String),

    #[error("NonCommutativeGroup: {0}")]
    NonCommutativeGroup(String),

    #[error("BadTypeParameter: {0}")]
    BadTypeParameter(String),

    #[error("NotEpimorphism: {0}")]
    NotEpimorphism(String),

    #[error("InvalidHom: {0}")]
    InvalidHom(String),

    #[error("NotTransitive: anchor misses {} base pair(s), first {:?}", missing.len(), missing.first().copied().unwrap_or_default())]
    NotTransitive { missing: Vec<(usize, usize)> },

    #[error("NotCommutative: {0}")]
    NotCommutative(String),

    #[error("NoSplitSection: exhaustive search over {explored} partial assignment(s) found no homomorphic section")]
    NoSplitSection { explored: u64 },

    #[error("SearchBudgetExceeded: gave up after {budget} partial assignment(s)")]
    SearchBudgetExceeded { budget: u64 },

    #[error("SectionInvalid: {0}")]
    SectionInvalid(String),

    #[error("InternalInconsistency: {0}")]
    InternalInconsistency(String),

    #[error("Json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
