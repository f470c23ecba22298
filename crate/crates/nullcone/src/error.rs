use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("scale factor must be positive, got a({t}) = {value}")]
    NonPositiveScale { t: f64, value: f64 },
    #[error("branch error: {0}")]
    Branch(String),
    #[error("degenerate chart: {0}")]
    DegenerateChart(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("singular separation: |y.y'| = {ydot:e}")]
    Singular { ydot: f64 },
    #[error("finite-difference steps disagree: {0}")]
    FiniteDifference(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
