//! Library side of the `mmsim` command-line tool: configuration, the four
//! subcommands and their CSV / SVG writers.

pub mod commands;
pub mod config;
pub mod output;
pub mod plot;

pub use commands::{run, Command, Options};
pub use config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] mmsim::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 when the numerics fail to converge or truncate, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Model(e) if e.is_numerical() => 3,
            Self::Model(_) => 2,
            Self::Io(_) => 1,
        }
    }
}
