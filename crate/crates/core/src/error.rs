use thiserror::Error;

#[derive(Debug, Error)]
pub enum EpwError {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operation requires odd characteristic or the rationals (got characteristic {0})")]
    CharacteristicTwo(u64),

    #[error("the zero trivector has no orbit")]
    ZeroTrivector,

    #[error("wrong orbit stratum: expected {expected}, found {found}")]
    WrongStratum {
        expected: &'static str,
        found: &'static str,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("expected a subspace of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("subspace is not isotropic: sigma(b{0}, b{1}) != 0")]
    NotIsotropic(usize, usize),

    #[error("planes {0} and {1} meet only in 0, so their trivectors are not orthogonal")]
    DisjointPlanes(usize, usize),

    #[error("subspace of dimension {0} is not Lagrangian")]
    NotLagrangian(usize),

    #[error("DegenerateSextic: the determinant vanishes identically on every chart")]
    DegenerateSextic,

    #[error("DivisionFailure: x{chart}^4 does not divide the chart determinant")]
    DivisionFailure { chart: usize },

    #[error("exhaustive enumeration needs a finite field")]
    NeedsFiniteField,

    #[error("field too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    #[error("subspace is not in Theta_A")]
    NotInTheta,

    #[error("gradient vanishes at the point: singular point of the sextic")]
    SingularPoint,

    #[error("mismatch between sextic vanishing and rank test at point {0}")]
    CensusMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("unsupported file format {0:?}")]
    Version(String),

    #[error("content hash mismatch: header says {expected}, content gives {actual}")]
    HashMismatch { expected: String, actual: String },

    #[error("invalid file content: {0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, EpwError>;
