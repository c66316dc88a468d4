use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed text input, located by 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input that parses but breaks an instance invariant.
    #[error("invalid instance: {0}")]
    Validation(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("oracle refused: {0}")]
    OracleRefused(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("invariant failure: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),

    /// Any of the above, tagged with the file it came from.
    #[error("{path}: {source}")]
    InFile { path: String, source: Box<Error> },
}

impl Error {
    pub fn in_file(self, path: impl Into<String>) -> Self {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// The error with any file tags removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFile { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn contract(message: impl Into<String>) -> Self {
        Error::Contract(message.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
