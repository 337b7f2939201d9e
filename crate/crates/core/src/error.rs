use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a formula (or within the
    /// guard band of one of its poles).
    #[error("{what} = {value} is outside the domain: {expected}")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("curvature hypothesis K <= -1 fails at u = {u}: K = {k}")]
    CurvatureAboveMinusOne { u: f64, k: f64 },

    #[error("Riccati solution blew up at u = {u} (|k_g| > 1e6)")]
    BlowUp { u: f64 },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("element with |trace| = {trace} is {kind}, not a hyperbolic translation")]
    NotHyperbolic { trace: f64, kind: &'static str },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            expected,
        }
    }
}
