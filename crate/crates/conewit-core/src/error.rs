use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix carries no bipartite dimension tag (m, n)")]
    MissingDims,

    #[error("matrix is not Hermitian (relative deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("vector has length {len}, expected {expected}")]
    BadVectorLength { len: usize, expected: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("vector is not normalized (norm {norm:.6e})")]
    NonUnitVector { norm: f64 },

    #[error("parameter `{name}` must be nonnegative, got {value}")]
    NegativeParameter { name: &'static str, value: f64 },

    #[error("parameter `{name}` must be at least {min}, got {value}")]
    ParameterTooSmall {
        name: &'static str,
        min: usize,
        value: usize,
    },

    #[error("subspace basis is not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("subspace is empty where a nonzero subspace is required")]
    EmptySubspace,

    #[error("simple-vector rank s={s} is out of range 1..={max}")]
    SimpleRankOutOfRange { s: usize, max: usize },

    #[error("input state is not PPT")]
    NotPpt,

    #[error("input state is not positive semi-definite")]
    NotPsd,

    #[error("map is completely positive; it cannot be an entanglement witness")]
    CompletelyPositiveInput,

    #[error("map is not block-positive (found pairing {pairing:.3e} < 0)")]
    NotBlockPositive { pairing: f64 },

    #[error("map must carry a purely co-CP Kraus decomposition: {0}")]
    NotPurelyCoCp(String),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
