use std::path::PathBuf;

/// Errors produced by parsing, configuration and engine I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid chromosome: {0}")]
    Chromosome(String),

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("checkpoint {path}: line {line}: {message}")]
    Checkpoint {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("cannot generate instance: {0}")]
    Generate(String),

    #[error("search space of {evaluations} chromosomes exceeds oracle limit {limit}")]
    OracleLimit { evaluations: u128, limit: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
