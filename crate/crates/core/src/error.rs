use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("loop at vertex `{0}` is not allowed here")]
    LoopNotAllowed(String),

    #[error("vertex `{0}` has no neighbours")]
    IsolatedVertex(String),

    #[error("curvature needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),

    #[error("`{0}` and `{1}` lie in different components")]
    DifferentComponents(String, String),

    #[error("fully dissimilar supports span components")]
    SupportsSpanComponents,

    #[error("graph is disconnected ({components} components); apply per component")]
    Disconnected { components: usize },

    #[error("k must be at least 3, got {0}")]
    CycleLength(usize),

    #[error("invalid removal set: {0}")]
    InvalidRemoval(String),

    #[error("chosen block is not a curvature-1 subclique: pair (`{0}`, `{1}`)")]
    InvalidChoice(String, String),

    #[error("precondition `{0}` violated: {1}")]
    Precondition(&'static str, String),

    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("path enumeration exceeded the step budget of {0} expansions")]
    StepBudget(u64),

    #[error("exact arithmetic overflowed {0}")]
    Overflow(&'static str),

    #[error("rational interval exceeds the denominator cap 2^64")]
    Precision,
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Domain,
    Resource,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } | Error::UnknownVertex(_) | Error::InvalidPartition(_) => ErrorKind::Input,
            Error::CapExceeded { .. } | Error::StepBudget(_) | Error::Overflow(_) | Error::Precision => {
                ErrorKind::Resource
            }
            _ => ErrorKind::Domain,
        }
    }
}
