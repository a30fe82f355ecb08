use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("line {line}: loop at vertex {v}")]
    Loop { line: usize, v: usize },

    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: String,
        size: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("edge set is not removable at budget s={s}")]
    NotRemovable { s: usize },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded {
            what: what.to_string(),
            size,
            cap,
        })
    } else {
        Ok(())
    }
}
