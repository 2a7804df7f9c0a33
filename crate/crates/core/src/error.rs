use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Each variant corresponds to one failure mode of a numerical routine; the
/// CLI maps them onto exit codes and the C ABI onto integer status codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("hypergeometric lower parameter c = {re} + {im}i is a nonpositive integer")]
    InvalidC { re: f64, im: f64 },

    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("m - n = {0} is odd; the spherical subspace is trivial")]
    Parity(i64),

    #[error("spectral parameter sits on an eigenvalue (|W| = {0:e})")]
    AtEigenvalue(f64),

    #[error("bound state index {index} out of range (count = {count})")]
    Index { index: usize, count: usize },

    #[error("phase unwrapping failed near {at}: adjacent step {step} rad")]
    Unwrap { at: f64, step: f64 },

    #[error("least-squares fit is ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),

    #[error("ODE step size underflow at x = {0}")]
    StepFailure(f64),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
