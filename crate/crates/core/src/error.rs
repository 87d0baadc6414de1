use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller supplied text or parameters the operation cannot accept.
    #[error("invalid input: {0}")]
    Input(String),

    /// A name was looked up in a static catalog and not found.
    #[error("unknown {kind} `{name}`; valid values: {}", valid.join(", "))]
    Catalog {
        kind: &'static str,
        name: String,
        valid: Vec<String>,
    },

    /// A bundled or user-supplied resource file is missing or malformed.
    #[error("resource `{}`: {reason}", path.display())]
    Resource { path: PathBuf, reason: String },

    #[error("checksum mismatch for `{}`: expected {expected}, found {actual}", path.display())]
    Integrity {
        path: PathBuf,
        expected: String,
        actual: String,
    },

    #[error("failed to fetch {url}: {reason}")]
    Fetch { url: String, reason: String },

    #[error("failed to load model `{model_id}`: {reason}")]
    Load { model_id: String, reason: String },

    /// A requested hardware capability is not present. There is no silent fallback.
    #[error("capability unavailable: {0}")]
    Capability(String),

    #[error("I/O error on `{}`: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// `true` for errors caused by what the caller passed in, as opposed to
    /// failures of resources, the network, or models.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Catalog { .. })
    }
}
