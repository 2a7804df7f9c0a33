//! Edge functions on the square, their partial windings and the index
//! identity winding = number of bound states.
//!
//! The square is traversed clockwise: edge 1 for s from -inf to +inf, edge 2
//! for k from 0 to +inf, edge 3 for s from +inf to -inf and edge 4 for k from
//! +inf to 0. Each edge contributes omega_j = -(change of arg Lambda_j)/(2 pi),
//! so that Lambda_j = e^{-2 pi i phi_j}.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::model::{classify_beta, BetaClass, ModelParams};
use crate::phase::{unwrap_path, wrap};
use crate::scattering::{sigma, sigma_at_infinity, sigma_at_zero};
use crate::spectral::bound_state_count;
use crate::specfun::log_gamma;

pub const DEFAULT_K_MAX: f64 = 200.0;
pub const DEFAULT_S_MAX: f64 = 50.0;
/// Tolerance for the numeric winding to count as an integer.
pub const INTEGER_TOL: f64 = 1e-6;
const BASE_POINTS: usize = 2001;

pub fn lambda1(params: &ModelParams, s: f64) -> Complex64 {
    if classify_beta(params).is_negative_integer() {
        let t = (PI * s).tanh();
        let sech = 1.0 / (PI * s).cosh();
        Complex64::new(-t, sech)
    } else {
        Complex64::new(1.0, 0.0)
    }
}

pub fn lambda2(params: &ModelParams, k: f64) -> Result<Complex64> {
    if k == 0.0 {
        return Ok(Complex64::new(sigma_at_zero(params), 0.0));
    }
    sigma(params, k)
}

/// vartheta(s) = Gamma((mu+1)/2 - is/2) Gamma(3/4 + is/2) /
/// (Gamma((mu+1)/2 + is/2) Gamma(3/4 - is/2)), a pure phase.
pub fn theta(mu: f64, s: f64) -> f64 {
    let im = |a: f64| {
        log_gamma(Complex64::new(a, s / 2.0))
            .map(|l| l.im)
            .unwrap_or(f64::NAN)
    };
    2.0 * (im(0.75) - im((mu + 1.0) / 2.0))
}

/// Lambda_3(s) = e^{-i pi (mu-1/2)/2} vartheta(s).
pub fn lambda3_theta(mu: f64, s: f64) -> Complex64 {
    Complex64::new(0.0, -PI * (mu - 0.5) / 2.0 + theta(mu, s)).exp()
}

pub fn lambda4(_params: &ModelParams, _k: f64) -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Analytic values of Lambda_1..Lambda_4 at the endpoints of their edges, in
/// traversal order.
pub fn edge_endpoints(params: &ModelParams) -> [(Complex64, Complex64); 4] {
    let one = Complex64::new(1.0, 0.0);
    let l1 = if classify_beta(params).is_negative_integer() {
        (one, -one)
    } else {
        (one, one)
    };
    let s0 = Complex64::new(sigma_at_zero(params), 0.0);
    let sinf = sigma_at_infinity(params);
    [l1, (s0, sinf), (sinf, one), (one, one)]
}

/// omega_1..omega_4 from the closed formulas.
pub fn winding_contributions(params: &ModelParams) -> [f64; 4] {
    let mu = params.mu;
    let class = classify_beta(params);
    let w1 = if class.is_negative_integer() { -0.5 } else { 0.0 };
    let w2 = match class {
        BetaClass::Positive => (mu - 0.5) / 2.0,
        BetaClass::NegativeNoninteger { n, .. } => n as f64 + (mu - 0.5) / 2.0,
        BetaClass::NegativeInteger { n } => n as f64 + (mu + 0.5) / 2.0,
    };
    let w3 = -(mu - 0.5) / 2.0;
    [w1, w2, w3, 0.0]
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// Phase change along a truncated edge plus the residual rotation to the
/// analytic limit at its open end.
fn edge_change<F>(f: F, grid: &[f64], start: Complex64, end: Complex64) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let path = unwrap_path(f, grid, start.arg())?;
    let first = path[0];
    let last = path[path.len() - 1];
    let head = wrap(first.value.arg() - start.arg());
    let tail = wrap(end.arg() - last.value.arg());
    Ok(head + (last.phase - first.phase) + tail)
}

/// Per-edge windings from unwrapped phases, truncated at k_max and +/- s_max
/// and completed with the analytic limits.
pub fn winding_numeric_parts(params: &ModelParams, k_max: f64, s_max: f64) -> Result<[f64; 4]> {
    let ends = edge_endpoints(params);
    let s_grid = linspace(-s_max, s_max, BASE_POINTS);
    let d1 = edge_change(|s| Ok(lambda1(params, s)), &s_grid, ends[0].0, ends[0].1)?;

    // k-path for sigma: geometric near 0 where sigma can turn quickly, then uniform
    let mut k_grid: Vec<f64> = (0..200).map(|i| 1e-8 * 10f64.powf(8.0 * i as f64 / 200.0)).collect();
    k_grid.extend(linspace(1.0, k_max, BASE_POINTS));
    let d2 = edge_change(|k| sigma(params, k), &k_grid, ends[1].0, ends[1].1)?;

    let mut s_rev = s_grid.clone();
    s_rev.reverse();
    let d3 = edge_change(|s| Ok(lambda3_theta(params.mu, s)), &s_rev, ends[2].0, ends[2].1)?;

    Ok([d1, d2, d3, 0.0].map(|d| -d / (2.0 * PI)))
}

/// Total winding of Lambda around the square.
pub fn winding_numeric(params: &ModelParams, k_max: f64, s_max: f64) -> Result<f64> {
    Ok(winding_numeric_parts(params, k_max, s_max)?.iter().sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexReport {
    pub mu: f64,
    pub nu: f64,
    pub beta_class: String,
    pub omega: [f64; 4],
    pub winding_closed: f64,
    pub winding_numeric: f64,
    pub bound_count: usize,
    pub pass: bool,
}

pub fn verify_index(params: &ModelParams) -> Result<IndexReport> {
    verify_index_with(params, DEFAULT_K_MAX, DEFAULT_S_MAX)
}

pub fn verify_index_with(params: &ModelParams, k_max: f64, s_max: f64) -> Result<IndexReport> {
    let omega = winding_contributions(params);
    let closed: f64 = omega.iter().sum();
    let numeric = winding_numeric(params, k_max, s_max)?;
    let count = bound_state_count(params);
    let rounded = numeric.round();
    let pass = (numeric - rounded).abs() < INTEGER_TOL
        && (closed - rounded).abs() < INTEGER_TOL
        && rounded == count as f64;
    Ok(IndexReport {
        mu: params.mu,
        nu: params.nu,
        beta_class: classify_beta(params).label().to_string(),
        omega,
        winding_closed: closed,
        winding_numeric: numeric,
        bound_count: count,
        pass,
    })
}
