//! Error taxonomy shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gamma-family function evaluated at a pole (argument {0})")]
    Pole(String),

    #[error("series does not converge at |z| >= 1 (|z| = {0})")]
    NonConvergent(String),

    #[error("term ratio is degenerate: {0}")]
    DegenerateRatio(String),

    #[error("catalog parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("catalog record `{record}` violates invariant: {msg}")]
    Invariant { record: String, msg: String },

    #[error("continuation step size underflow near {0}")]
    StepUnderflow(String),

    #[error("working precision exhausted: {0}")]
    PrecisionExhaustion(String),

    #[error("linear system is ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("failed to identify {0} as an exact constant")]
    Identification(String),

    #[error("Richardson extrapolation unstable: {0}")]
    ExtrapolationInstability(String),

    #[error("prime {0} is inapplicable for this record")]
    InapplicablePrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numeric domain error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
