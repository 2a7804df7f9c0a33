#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod cli;
pub mod error;
pub mod index;
pub mod model;
pub mod oracle;
pub mod phase;
pub mod quadrature;
pub mod scattering;
pub mod solutions;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
