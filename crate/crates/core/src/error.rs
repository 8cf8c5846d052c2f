use thiserror::Error;

/// Errors raised by grid construction, enumeration and the sequence paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("window {h}x{w} at ({r}, {c}) does not fit in a {rows}x{cols} grid")]
    Bounds {
        r: usize,
        c: usize,
        h: usize,
        w: usize,
        rows: usize,
        cols: usize,
    },

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("{h}x{w} patterns did not saturate by level {level}; count is unverified")]
    Unverified { h: usize, w: usize, level: u32 },

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
