use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("config: {0}")]
    ConfigSyntax(String),

    #[error("config field `{field}`: {reason}")]
    ConfigField { field: &'static str, reason: String },

    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("malformed preferences: {0}")]
    Preferences(String),

    #[error("matching invariant violated: {0}")]
    Matching(String),

    #[error("brute-force enumeration refused: {0}")]
    SizeGuard(String),

    #[error("no {missing} records for grid point N={users}, P={picos}")]
    MissingPair {
        users: usize,
        picos: usize,
        missing: &'static str,
    },

    #[error("grid point N={users}, P={picos}, seed={seed}: {source}")]
    GridPoint {
        users: usize,
        picos: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn field(field: &'static str, reason: impl Into<String>) -> Self {
        Error::ConfigField {
            field,
            reason: reason.into(),
        }
    }
}
