use thiserror::Error;

pub type Result<T> = std::result::Result<T, ElmError>;

#[derive(Debug, Error)]
pub enum ElmError {
    #[error("empty matrix")]
    EmptyMatrix,

    #[error("non-finite input")]
    NonFinite,

    #[error("incompatible shapes: {0}")]
    IncompatibleShapes(String),

    #[error("empty feature space")]
    EmptyFeatureSpace,

    #[error("feature dimension mismatch: model expects {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("model not fitted")]
    NotFitted,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid label {0}: expected 0 or 1")]
    InvalidLabel(u8),

    #[error("length mismatch: {0} predictions vs {1} labels")]
    LengthMismatch(usize, usize),

    #[error("unknown column \"{0}\"")]
    UnknownColumn(String),

    #[error("missing column \"{0}\"")]
    MissingColumn(String),

    #[error("duplicate column \"{0}\"")]
    DuplicateColumn(String),

    #[error("row {row}: age \"{value}\" is not an integer")]
    InvalidAge { row: u64, value: String },

    #[error("row {row}, column \"{column}\": unrecognized value \"{value}\"")]
    InvalidCell {
        row: u64,
        column: String,
        value: String,
    },

    #[error("malformed csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("cannot fit normalizer on an empty training set")]
    EmptyTrainingSet,

    #[error("dataset too small to split")]
    DatasetTooSmall,

    #[error("no records")]
    NoRecords,

    #[error("labels required for eval")]
    LabelsRequired,

    #[error("invalid model file: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
