use std::io;
use std::path::PathBuf;

/// Errors produced by softnet operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    /// A malformed line in a text input (edge list, config file).
    #[error("{origin}:{line}: {message}")]
    Parse {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("network has {actual} nodes, at least {required} required")]
    TooSmall { required: usize, actual: usize },

    #[error("no class entities to build a network from")]
    NoEntities,

    #[error("degenerate power-law fit: {0}")]
    DegenerateFit(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("partitions cover different node sets ({left} vs {right} nodes)")]
    NodeSetMismatch { left: usize, right: usize },

    #[error("network carries no package annotations")]
    MissingPackages,

    #[error("node `{0}` has no neighbors")]
    IsolatedNode(String),

    #[error("unknown {what} `{value}`")]
    Unknown { what: &'static str, value: String },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
