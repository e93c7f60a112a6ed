use thiserror::Error;

/// Errors produced by the chain computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A chain configuration failed validation or could not be parsed.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A sign-state token or coefficient vector is malformed.
    #[error("invalid state: {0}")]
    State(String),

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error(
        "quadrature did not converge: estimate {estimate:e}, error estimate {error_estimate:e} \
         exceeds tolerance {tolerance:e} after {intervals} intervals"
    )]
    Accuracy {
        estimate: f64,
        error_estimate: f64,
        tolerance: f64,
        intervals: usize,
    },

    /// The observation time precedes the retarded arrival time of some atom.
    #[error("causality violation: t = {t:e} s precedes retarded time {retarded:e} s{}", context_suffix(.context))]
    Causality {
        t: f64,
        retarded: f64,
        context: Option<String>,
    },
}

fn context_suffix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
