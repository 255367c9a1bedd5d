use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no usable triangles")]
    EmptyInput,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("no vertex off the plane of boundary edge {0}-{1}")]
    NoWitnessVertex(u32, u32),
    #[error("walk stalled while mapping constraint {0}")]
    InternalWalkStall(u32),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Overflow(#[from] polycell_predicates::OverflowError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 1 for input problems, 2 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoWitnessVertex(..) | Error::InternalWalkStall(_) | Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
