use thiserror::Error;

/// Errors raised across the solver stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("singular argument: {0}")]
    Singular(&'static str),

    #[error("walk exceeded the step cap of {steps} steps (partial score {partial_score})")]
    CappedWalk { partial_score: f64, steps: usize },

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("quadrature did not reach tolerance: {0}")]
    Tolerance(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
