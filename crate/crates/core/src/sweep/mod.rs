//! Parameter sweeps producing one CSV table per command.
//!
//! A sweep is split into independent cells evaluated on a worker pool; the
//! results are collected in parameter order so the CSV body does not depend
//! on the thread count.

mod config;
mod csv;
mod run;

use std::path::PathBuf;

pub use config::{validate_config, Command, ConfigError, RawConfig, RunConfig, SweepRange};
pub use csv::{format_g15, write_atomic, Cell};
pub use run::{run, write_output, SweepResult};

/// Version string recorded in every output file.
pub const VERSION: &str = env!("DISTILLERY_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("numerical failure at {params}: {source}")]
    Numerical {
        params: String,
        #[source]
        source: crate::Error,
    },

    #[error("mashing did not converge within {iterations} iterations at {params}")]
    NoConvergence { params: String, iterations: usize },

    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl SweepError {
    /// 1 for configuration problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            SweepError::Config(_) | SweepError::Io { .. } | SweepError::Pool(_) => 1,
            SweepError::Numerical { .. } | SweepError::NoConvergence { .. } => 2,
        }
    }
}
