use alloc::string::String;

/// Everything the core can refuse to do.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{what} requires n >= {min}, got {n}")]
    DimensionTooSmall { what: &'static str, min: usize, n: usize },
    #[error("{what} supports n <= {max}, got {n}")]
    DimensionTooLarge { what: &'static str, max: usize, n: usize },
    #[error("{0} requires a binary {{0, t}} population")]
    NotBinary(&'static str),
    #[error("pattern code does not fit {slots} entries of base {base}")]
    CodeOutOfRange { slots: usize, base: u32 },
    #[error("search space of {size} patterns exceeds the budget of {budget}")]
    BudgetExceeded { size: String, budget: u128 },
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
