use thiserror::Error;

use crate::key::IntegralKey;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    /// `(g, n)` with `2g - 2 + n <= 0`.
    #[error("unstable moduli space: genus {genus} with {points} marked points")]
    Unstable { genus: u32, points: usize },

    /// A recursion could not pin the value down.
    #[error("underdetermined: no relation determines {0}")]
    Underdetermined(IntegralKey),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Reading or writing the on-disk memo cache failed.
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T, E = HodgeError> = std::result::Result<T, E>;
