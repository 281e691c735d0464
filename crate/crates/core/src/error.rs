use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. Undefined Hadamard products are
/// values (`None`), not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("all coordinates are zero")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point has a zero coordinate at index {index}")]
    ZeroCoordinate { index: usize },

    #[error("arity {r} outside 1..={max}")]
    BadArity { r: usize, max: usize },

    #[error("codimension {c} outside 1..={n}")]
    BadCodim { c: usize, n: usize },

    #[error("operation requires ambient dimension {expected}, got {found}")]
    BadDim { expected: usize, found: usize },

    #[error("every pairwise Hadamard product is undefined")]
    EmptyProduct,

    #[error("linear variety is empty")]
    EmptyVariety,

    #[error("combinatorial budget exceeded: {needed} subsets, cap {cap}")]
    CombinatorialBudget { needed: u128, cap: u64 },

    #[error("forms are not generally linear (subset {subset:?}): {reason}")]
    NotGenerallyLinear { subset: Vec<usize>, reason: String },

    #[error("inadmissible input: {0}")]
    Inadmissible(String),

    #[error("Hadamard power span has dimension {dim}, not a hyperplane")]
    NotHyperplane { dim: usize },

    #[error("witness verification failed: {0}")]
    VerificationFailed(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroVector => "ZeroVector",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroCoordinate { .. } => "ZeroCoordinate",
            Error::BadArity { .. } => "BadArity",
            Error::BadCodim { .. } => "BadCodim",
            Error::BadDim { .. } => "BadDim",
            Error::EmptyProduct => "EmptyProduct",
            Error::EmptyVariety => "EmptyVariety",
            Error::CombinatorialBudget { .. } => "CombinatorialBudget",
            Error::NotGenerallyLinear { .. } => "NotGenerallyLinear",
            Error::Inadmissible(_) => "Inadmissible",
            Error::NotHyperplane { .. } => "NotHyperplane",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::ParseRational(_) => "ParseRational",
        }
    }
}
