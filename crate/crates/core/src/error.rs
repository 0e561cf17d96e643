use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("unknown strategy mode `{0}`")]
    UnknownMode(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("tick overflow: clock already at max_ticks ({0})")]
    TickOverflow(u64),
}

/// Metrics that are undefined when nothing collided.
#[derive(Debug, Error, PartialEq, Eq, Clone, Copy)]
pub enum MetricError {
    #[error("no-collisions")]
    NoCollisions,
}

#[derive(Debug, Error, PartialEq, Eq, Clone, Copy)]
pub enum FusionError {
    #[error("no channel samples to fuse")]
    Empty,
    #[error("degenerate weights: sum of snr*dos is zero")]
    DegenerateWeights,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Validation(String),
    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("bad CSV in {path}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Self::Csv {
            path: path.into(),
            source,
        }
    }

    /// True for filesystem failures (as opposed to bad input).
    pub fn is_io(&self) -> bool {
        match self {
            Self::Io { .. } => true,
            Self::Csv { source, .. } => source.is_io_error(),
            _ => false,
        }
    }
}
