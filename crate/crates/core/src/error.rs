use thiserror::Error;

/// Errors raised by the solver toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid tour: {0}")]
    InvalidTour(String),
    #[error("invalid stacking order: {0}")]
    InvalidStacking(String),
    #[error("item set mismatch: {0}")]
    ItemSetMismatch(String),
    #[error("dimension mismatch: tour over {items} items, matrix side {side}")]
    DimensionMismatch { items: usize, side: usize },
    #[error("{what} of {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
