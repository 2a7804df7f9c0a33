//! Special functions: gamma family, Gauss hypergeometric F, Bessel.

mod bessel;
mod gamma;
mod hyp2f1;

pub use bessel::bessel_script_j;
pub use gamma::{
    beta_fn, digamma, gamma, gamma_ratio, is_nonpositive_integer, log_gamma, pochhammer, rgamma,
    rgamma_real, sin_pi,
};
pub use hyp2f1::{
    gauss_2f1, gauss_2f1_complement, integer_gap, HypergeometricArgs, INTEGER_GAP_TOL,
    SERIES_THRESHOLD,
};

/// Raw power series and the z -> 1 - z branches, exposed for consistency
/// testing.
pub mod branches {
    pub use super::hyp2f1::{log_case, series, transformed};
}
