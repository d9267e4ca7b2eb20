use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidPmf(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("information quantity is negative ({0:e}); input is inconsistent")]
    NegativeInformation(f64),

    #[error("rate pair ({r1}, {r2}) lies outside the capacity region")]
    OutsideRegion { r1: usize, r2: usize },

    #[error("inadmissible: {0}")]
    Inadmissible(String),

    #[error("enumeration needs {needed} outcomes, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("linear program failed: {0}")]
    Lp(String),
}

pub type Result<T> = std::result::Result<T, Error>;
