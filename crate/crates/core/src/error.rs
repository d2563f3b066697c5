use thiserror::Error;

use crate::model::ConstructionTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad input: malformed tree, out-of-range vertex, violated precondition.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A growth condition of the doubling construction failed for leg `index` (1-based, sorted order).
    #[error(
        "leg {index} has length {length}, but the growth condition requires at least {required}"
    )]
    Growth {
        index: usize,
        length: usize,
        required: usize,
    },

    /// The requested object provably does not exist.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A search ran out of its node budget before finishing.
    #[error("search budget of {budget} nodes exhausted: {what}")]
    Budget { what: String, budget: u64 },

    /// A construction produced something its correctness argument rules out.
    #[error("construction invariant violated: {message}")]
    Internal {
        message: String,
        trace: Option<Box<ConstructionTrace>>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for exit codes and machine-readable reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Infeasible,
    Resource,
    Internal,
    Io,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Validation => "validation",
            ErrorKind::Infeasible => "infeasible",
            ErrorKind::Resource => "resource",
            ErrorKind::Internal => "internal",
            ErrorKind::Io => "io",
        }
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Validation(_) | Error::Growth { .. } | Error::Json(_) => ErrorKind::Validation,
            Error::Infeasible(_) => ErrorKind::Infeasible,
            Error::Budget { .. } => ErrorKind::Resource,
            Error::Internal { .. } => ErrorKind::Internal,
            Error::Io(_) => ErrorKind::Io,
        }
    }

    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::Internal {
            message: message.into(),
            trace: None,
        }
    }

    /// Attaches a trace to an internal error; other kinds pass through unchanged.
    pub(crate) fn with_trace(self, trace: &ConstructionTrace) -> Self {
        match self {
            Error::Internal { message, .. } => Error::Internal {
                message,
                trace: Some(Box::new(trace.clone())),
            },
            other => other,
        }
    }
}

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::Validation(format!($($arg)*))
    };
}
pub(crate) use invalid;
