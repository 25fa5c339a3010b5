use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A malformed input file.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Invalid arguments or data passed to an operation.
    #[error("{0}")]
    Input(String),
    /// The game lacks the structure a solver requires.
    #[error("{0}")]
    Structure(String),
    /// An exhaustive search ran past its budget.
    #[error("search budget exceeded: examined {examined} of {budget} allowed states")]
    Resource { examined: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for bad input or structure, 3 for
    /// a blown search budget.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Parse { .. } | Error::Input(_) | Error::Structure(_) => 2,
            Error::Resource { .. } => 3,
        }
    }
}

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn structure(msg: impl Into<String>) -> Error {
    Error::Structure(msg.into())
}
