use std::fmt;

use thiserror::Error;

/// Why a state vector was rejected by a flux model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFault {
    NonPositiveDensity,
    NonPositivePressure,
    NonFinite,
}

impl fmt::Display for StateFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StateFault::NonPositiveDensity => "non-positive density",
            StateFault::NonPositivePressure => "non-positive pressure",
            StateFault::NonFinite => "non-finite value",
        };
        f.write_str(s)
    }
}

/// Where in the computation a state fault surfaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Cell(isize),
    Interface(isize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Cell(i) => write!(f, "cell {i}"),
            Location::Interface(i) => write!(f, "interface {i}+1/2"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid state at {location}: {fault}")]
    State { location: Location, fault: StateFault },

    #[error("{source} (step {step}, t = {time})")]
    Step {
        step: usize,
        time: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn state(location: Location, fault: StateFault) -> Self {
        Error::State { location, fault }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Innermost error once step context is stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Step { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
