use std::path::PathBuf;

/// Errors raised while validating, generating, evaluating or rendering data.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension must be at least 2, found {found} at row {row}")]
    TooFewDimensions { row: usize, found: usize },

    #[error("dimension mismatch at row {row}: expected {expected}, found {found}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite value at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },

    #[error("label count {labels} does not match vector count {vectors}")]
    LabelLengthMismatch { labels: usize, vectors: usize },

    #[error("attribute name count {names} does not match dimension {dimension}")]
    AttributeNameMismatch { names: usize, dimension: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("invalid scale: {0}")]
    InvalidScale(String),

    #[error("non-positive values under log scale at rows {}", join_rows(.rows))]
    NonPositiveLog { rows: Vec<usize> },

    #[error("edge slope requires the ab-bc scheme")]
    SchemeMismatch,

    #[error("k = {k} exceeds point count {points}")]
    TooManyClusters { k: usize, points: usize },

    #[error("k must be at least 1")]
    ZeroClusters,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("silhouette undefined: need at least 2 clusters, found {clusters}")]
    SilhouetteUndefined { clusters: usize },

    #[error("dataset has no class labels")]
    Unlabeled,

    #[error("row count {found} ≠ {expected}")]
    RowCount { found: usize, expected: usize },

    #[error("{path}: row {row}: {message}")]
    Csv {
        path: String,
        row: usize,
        message: String,
    },

    #[error("label column '{0}' not found")]
    MissingLabelColumn(String),

    #[error("radar chart needs at least 3 dimensions, found {0}")]
    TooFewAxes(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn join_rows(rows: &[usize]) -> String {
    rows.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
