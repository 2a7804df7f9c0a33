//! Model parameters, the potential, and the (m, n) -> (mu, nu) reduction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for recognising beta as an integer.
pub const BETA_INTEGER_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu: f64,
    pub nu: f64,
}

impl ModelParams {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !(mu.is_finite() && nu.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite parameters mu = {mu}, nu = {nu}"
            )));
        }
        if mu < 0.0 || nu < 0.0 {
            return Err(Error::Domain(format!(
                "parameters must be nonnegative (mu = {mu}, nu = {nu})"
            )));
        }
        Ok(Self { mu, nu })
    }

    pub fn alpha(&self) -> f64 {
        (1.0 + self.mu + self.nu) / 2.0
    }

    pub fn beta(&self) -> f64 {
        (1.0 + self.mu - self.nu) / 2.0
    }

    /// The zero potential: mu = nu = 1/2.
    pub fn is_free(&self) -> bool {
        self.mu == 0.5 && self.nu == 0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BetaClass {
    Positive,
    /// beta = -n
    NegativeInteger {
        n: u64,
    },
    /// beta = -n + eps with eps in (0, 1)
    NegativeNoninteger {
        n: u64,
        eps: f64,
    },
}

impl BetaClass {
    pub fn is_negative_integer(&self) -> bool {
        matches!(self, BetaClass::NegativeInteger { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            BetaClass::Positive => "positive",
            BetaClass::NegativeInteger { .. } => "negative_integer",
            BetaClass::NegativeNoninteger { .. } => "negative_noninteger",
        }
    }
}

pub fn classify_beta(params: &ModelParams) -> BetaClass {
    let beta = params.beta();
    let r = beta.round();
    if r <= 0.0 && (beta - r).abs() < BETA_INTEGER_TOL {
        return BetaClass::NegativeInteger { n: (-r) as u64 };
    }
    if beta > 0.0 {
        return BetaClass::Positive;
    }
    let n = (-beta).ceil();
    BetaClass::NegativeNoninteger {
        n: n as u64,
        eps: beta + n,
    }
}

/// V(x) = (mu^2 - 1/4)/(sinh^2 x cosh^2 x) + (mu^2 - nu^2)/cosh^2 x.
pub fn potential(params: &ModelParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("potential needs x > 0, got {x}")));
    }
    Ok(potential_unchecked(params, x))
}

pub(crate) fn potential_unchecked(params: &ModelParams, x: f64) -> f64 {
    let (mu, nu) = (params.mu, params.nu);
    // sech^2 x = 4 e^{-2x} / (1 + e^{-2x})^2 stays finite for large x
    let e = (-2.0 * x).exp();
    let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    // 1 / (sinh^2 cosh^2) = 4 / sinh^2(2x)
    let s2 = (2.0 * x).sinh();
    let inv = if s2.is_finite() { 4.0 / (s2 * s2) } else { 0.0 };
    (mu * mu - 0.25) * inv + (mu * mu - nu * nu) * sech2
}

/// (m^2 + n^2 - 1 - 2mn cosh 2x) / sinh^2(2x), the potential written in the
/// group indices.
pub fn potential_group_form(m: i64, n: i64, x: f64) -> f64 {
    let (m, n) = (m as f64, n as f64);
    let s = (2.0 * x).sinh();
    (m * m + n * n - 1.0 - 2.0 * m * n * (2.0 * x).cosh()) / (s * s)
}

pub fn reduce_group_indices(m: i64, n: i64) -> Result<ModelParams> {
    if (m - n).rem_euclid(2) != 0 {
        return Err(Error::Parity(m - n));
    }
    ModelParams::new((m - n).abs() as f64 / 2.0, (m + n).abs() as f64 / 2.0)
}
