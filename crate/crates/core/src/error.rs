use thiserror::Error;

/// Failure modes shared by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (last term {last_term:e})")]
    Convergence { terms: usize, last_term: f64 },

    #[error("branch factor is singular: {0}")]
    Singularity(String),

    #[error("numerical transform did not converge: {0}")]
    NonConvergence(String),

    #[error("no root of the indicial equation in (0, {k_max}]")]
    NoRoot { k_max: f64 },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("value overflow at r = {0}")]
    Overflow(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
