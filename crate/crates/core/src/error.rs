use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The closed-form population denominator vanished (Omega = 0 and r = 0,
    /// or G = 0 and r = 0). Callers should route through the steady-state solver.
    #[error("degenerate parameters: population denominator |D| = {denominator:e} below floor {floor:e}")]
    DegenerateParameters { denominator: f64, floor: f64 },

    #[error("steady-state system is singular (relative pivot {pivot_ratio:e})")]
    SingularSystem { pivot_ratio: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("no resolvable structure: {0}")]
    NoStructure(String),

    #[error("input field carries zero power")]
    ZeroInput,

    #[error("probe amplitude {amplitude:e} exceeded ceiling {ceiling:e} at z = {z} cm")]
    AmplificationOverflow { amplitude: f64, ceiling: f64, z: f64 },

    #[error("unstable step at z = {z} cm: relative power change {change:e} without any gain in the medium")]
    StepUnstable { z: f64, change: f64 },

    #[error("susceptibility failed at sample (x = {x} cm, y = {y} cm): {source}")]
    Sample {
        x: f64,
        y: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid config at `{path}`: {message}")]
    ConfigInvalid { path: String, message: String },

    #[error("scenario `{scenario}`: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
