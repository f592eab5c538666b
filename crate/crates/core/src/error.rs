//! Error type shared by every module of the simulator.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum SimError {
    /// An input is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix/vector shapes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The configuration is valid input but not supported by this build.
    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A numerically degenerate case that has no unique answer.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Estimation pipeline failure (propagated from recovery).
    #[error("recovery error: {0}")]
    Recovery(String),

    /// Unknown method identifier in an experiment config.
    #[error("unknown method id: {0}")]
    UnknownMethod(String),

    /// A pilot plan that cannot be scheduled on the configured hardware.
    #[error("infeasible plan: {0}")]
    InfeasiblePlan(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SimError>;

impl SimError {
    pub fn domain(msg: impl Into<String>) -> Self {
        SimError::Domain(msg.into())
    }
    pub fn dimension(msg: impl Into<String>) -> Self {
        SimError::Dimension(msg.into())
    }
}
