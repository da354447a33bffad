use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    FileUnreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}: document has no non-blank lines")]
    EmptyDocument(String),
    #[error("no patent files found in {0}")]
    EmptyCorpus(PathBuf),
    #[error("invalid section rules: {0}")]
    BadRules(String),
    #[error("override for {patent_id}/{section}: {message}")]
    BadOverride {
        patent_id: String,
        section: String,
        message: String,
    },

    #[error("relevancy annotation for {0} has a zero total count")]
    ZeroTotal(String),
    #[error("invalid keyword registry: {0}")]
    BadRegistry(String),

    #[error("domain has no patents")]
    EmptyDomain,
    #[error("domain {0} has zero words")]
    ZeroWords(String),
    #[error("patent counts from different domains ({0} vs {1}) cannot be aggregated")]
    MixedDomains(String, String),
    #[error("no improvement rate for domain {0}")]
    MissingRate(String),
    #[error("domain {0} has zero normalized keyword count")]
    ZeroKw(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("series has zero variance")]
    ZeroVariance,
    #[error("need at least {needed} values, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("|r| = 1 has no finite t statistic")]
    DegenerateR,
    #[error("need at least 3 records after exclusions, got {0}")]
    TooFewRecords(usize),
    #[error("group size {group_size} must be in 3..={records} and n_groups ≥ 1")]
    BadGroupSize { group_size: usize, records: usize },
    #[error("performance values must be positive")]
    NonPositivePerformance,
    #[error("years must be strictly increasing")]
    UnorderedYears,

    #[error("step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("m_max must be positive, got {0}")]
    BadRange(f64),
    #[error("interaction parameter d={d} must be in 1..={n_components}")]
    BadD { d: usize, n_components: usize },
    #[error("invalid model parameter: {0}")]
    BadParams(String),
    #[error("value must be positive, got {0}")]
    NonPositive(f64),

    #[error("malformed table {name}: {message}")]
    BadTable { name: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Input errors (missing or unreadable files, malformed inputs) versus
    /// validation errors (inputs read fine but violate a precondition).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::FileUnreadable { .. }
                | Error::EmptyDocument(_)
                | Error::EmptyCorpus(_)
                | Error::BadRules(_)
                | Error::BadOverride { .. }
                | Error::BadRegistry(_)
                | Error::BadTable { .. }
                | Error::Io(_)
                | Error::Csv(_)
                | Error::Json(_)
        )
    }
}
