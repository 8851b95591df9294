use thiserror::Error;
use uniflearn_core::bf::BfError;
use uniflearn_core::learn::LearnError;
use uniflearn_core::order::ParseError;
use uniflearn_core::session::SessionError;
use uniflearn_core::tree::TreeError;
use uniflearn_core::StructureError;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable files, malformed JSON or expressions.
    #[error("{0}")]
    Format(String),
    /// Well-formed input outside what the deciders handle.
    #[error("{0}")]
    Unsupported(String),
    /// A check the library promises never fails did.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Format(_) => 1,
            CliError::Unsupported(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::FiniteDescriptor | StructureError::SnapshotTooLarge { .. } | StructureError::CrossVariant => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Format(e.to_string()),
        }
    }
}

impl From<BfError> for CliError {
    fn from(e: BfError) -> Self {
        match e {
            BfError::Unsupported(_) | BfError::BoundsExceeded(_) | BfError::CrossVariant => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Format(e.to_string()),
        }
    }
}

impl From<LearnError> for CliError {
    fn from(e: LearnError) -> Self {
        match e {
            LearnError::Structure(e) => e.into(),
            LearnError::Bf(e) => e.into(),
            LearnError::TooManyAtoms(_) | LearnError::Unrealizable | LearnError::AbstractionMismatch => {
                CliError::Unsupported(e.to_string())
            }
            _ => CliError::Format(e.to_string()),
        }
    }
}

impl From<SessionError> for CliError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::Learn(e) => e.into(),
            SessionError::Bf(e) => e.into(),
            SessionError::Structure(e) => e.into(),
            SessionError::NotSeparated => CliError::Unsupported(e.to_string()),
            _ => CliError::Format(e.to_string()),
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::Structure(e) => e.into(),
            TreeError::BoundsExceeded(_) | TreeError::InfiniteOrder => CliError::Unsupported(e.to_string()),
            _ => CliError::Format(e.to_string()),
        }
    }
}
