use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument lies outside the domain of the operation.
    #[error("{name} out of domain: {reason}")]
    Domain { name: &'static str, reason: String },

    /// The subordinator path ends before it exceeds the requested level.
    #[error("subordinator path too short: last value {last} does not exceed {level}")]
    PathTooShort { level: f64, last: f64 },

    /// The trajectory does not reach past the requested time; extend it and retry.
    #[error("trajectory exhausted: total duration {total} does not exceed t = {t}")]
    TrajectoryExhausted { t: f64, total: f64 },

    #[error("trajectory needs more than {cap} steps to reach t = {t}")]
    StepCap { t: f64, cap: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error(transparent)]
    Config(#[from] crate::harness::ConfigError),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            name,
            reason: reason.into(),
        }
    }
}
