//! Discrepancies between the closed forms and the ODE oracle.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{verify_index_with, DEFAULT_K_MAX, DEFAULT_S_MAX};
use crate::model::ModelParams;
use crate::oracle::{
    count_bound_states_shooting, extract_sigma, greens_function_oracle, integrate_decaying_at,
    integrate_regular_at, wronskian_of, DEFAULT_X0, X_FAR,
};
use crate::scattering::sigma;
use crate::solutions::{Solutions, SpectralPoint};
use crate::spectral::{bound_state_count, eigenvalue_search, resolvent_kernel};

/// Fit window for the plane-wave fit; the potential tail there is below 1e-11.
pub const SIGMA_WINDOW: (f64, f64) = (14.0, 18.0);
pub const REGULAR_TOL: f64 = 1e-7;
pub const WRONSKIAN_SPREAD_TOL: f64 = 1e-8;
pub const WRONSKIAN_TOL: f64 = 1e-7;
pub const SIGMA_PHASE_TOL: f64 = 1e-6;
pub const GREEN_TOL: f64 = 1e-6;

/// Mean of a / b over paired samples.
fn fitted_ratio(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let s: Complex64 = a.iter().zip(b).map(|(x, y)| x / y).sum();
    s / a.len() as f64
}

fn check_grid(xs: &[f64]) -> Result<()> {
    if xs.is_empty() || xs.windows(2).any(|w| w[1] <= w[0]) || xs[0] <= DEFAULT_X0 {
        return Err(Error::Domain(
            "sample points must be increasing and above x0".into(),
        ));
    }
    if xs[xs.len() - 1] >= X_FAR {
        return Err(Error::Domain(format!("sample points must lie below {X_FAR}")));
    }
    Ok(())
}

/// Largest pointwise relative deviation |c u / L - 1| of the integrated
/// regular solution u from the closed form L, with c a single fitted constant.
pub fn regular_discrepancy(
    params: &ModelParams,
    zeta: Complex64,
    xs: &[f64],
    tol: f64,
) -> Result<f64> {
    check_grid(xs)?;
    let s = Solutions::new(params, SpectralPoint::interior(zeta)?)?;
    let closed: Vec<Complex64> = xs.iter().map(|&x| s.l(x)).collect::<Result<_>>()?;
    let ode = integrate_regular_at(params, -zeta * zeta, DEFAULT_X0, xs, tol)?;
    let c = fitted_ratio(&closed, &ode.u);
    Ok(closed
        .iter()
        .zip(&ode.u)
        .map(|(l, u)| (c * u / l - 1.0).norm())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WronskianCheck {
    /// (max - min) / |mean| of the numerical Wronskian over the samples.
    pub spread: f64,
    /// |W_numeric - W_closed| / |W_closed|.
    pub closed_error: f64,
}

/// Numerical Wronskian of (L, M) from the regular solution integrated
/// outward and the decaying one integrated inward, each matched to its
/// closed form by one constant.
pub fn wronskian_discrepancy(
    params: &ModelParams,
    zeta: Complex64,
    xs: &[f64],
    tol: f64,
) -> Result<WronskianCheck> {
    check_grid(xs)?;
    let s = Solutions::new(params, SpectralPoint::interior(zeta)?)?;
    let reg = integrate_regular_at(params, -zeta * zeta, DEFAULT_X0, xs, tol)?;
    let rev: Vec<f64> = xs.iter().rev().copied().collect();
    let mut dec = integrate_decaying_at(params, zeta, X_FAR, &rev, tol)?;
    dec.u.reverse();
    dec.du.reverse();
    let l: Vec<Complex64> = xs.iter().map(|&x| s.l(x)).collect::<Result<_>>()?;
    let m: Vec<Complex64> = xs.iter().map(|&x| s.m(x)).collect::<Result<_>>()?;
    let scale = fitted_ratio(&l, &reg.u) * fitted_ratio(&m, &dec.u);
    let w: Vec<Complex64> = (0..xs.len())
        .map(|i| scale * wronskian_of((reg.u[i], reg.du[i]), (dec.u[i], dec.du[i])))
        .collect();
    let mean = w.iter().sum::<Complex64>() / w.len() as f64;
    let mut spread: f64 = 0.0;
    for a in &w {
        for b in &w {
            spread = spread.max((a - b).norm());
        }
    }
    let closed = s.wronskian();
    Ok(WronskianCheck {
        spread: spread / mean.norm(),
        closed_error: (mean - closed).norm() / closed.norm(),
    })
}

/// Largest |arg(extracted / closed)| over `ks`.
pub fn sigma_discrepancy(params: &ModelParams, ks: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &k in ks {
        let fit = extract_sigma(params, k, SIGMA_WINDOW)?;
        worst = worst.max((fit / sigma(params, k)?).arg().abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundCounts {
    pub formula: usize,
    pub wronskian_roots: usize,
    pub shooting: usize,
}

impl BoundCounts {
    pub fn agree(&self) -> bool {
        self.formula == self.wronskian_roots && self.formula == self.shooting
    }
}

pub fn bound_counts(params: &ModelParams) -> Result<BoundCounts> {
    let e_min = -(params.nu + 1.0).powi(2) - 1.0;
    Ok(BoundCounts {
        formula: bound_state_count(params),
        wronskian_roots: eigenvalue_search(params).len(),
        shooting: count_bound_states_shooting(params, e_min)?,
    })
}

/// Largest relative deviation of the resolvent kernel from the oracle
/// Green function over the given point pairs.
pub fn green_discrepancy(
    params: &ModelParams,
    zeta: Complex64,
    pairs: &[(f64, f64)],
) -> Result<f64> {
    let pt = SpectralPoint::interior(zeta)?;
    let mut worst: f64 = 0.0;
    for &(x, y) in pairs {
        let closed = resolvent_kernel(params, pt, x, y)?;
        let ode = greens_function_oracle(params, pt, x, y)?;
        worst = worst.max((closed - ode).norm() / closed.norm());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub check: String,
    pub max_discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Discrepancy {
    fn new(check: &str, max_discrepancy: f64, tolerance: f64) -> Self {
        Discrepancy {
            check: check.to_string(),
            max_discrepancy,
            tolerance,
            pass: max_discrepancy <= tolerance,
        }
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

/// The full table of closed form versus oracle comparisons at one
/// parameter pair, ODE tolerance `tol`.
pub fn oracle_report(params: &ModelParams, tol: f64) -> Result<Vec<Discrepancy>> {
    let xs = linspace(0.1, 6.0, 60);
    let mut regular: f64 = 0.0;
    for zeta in [
        Complex64::new(2.0, 1.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.5, 2.0),
    ] {
        regular = regular.max(regular_discrepancy(params, zeta, &xs, tol)?);
    }
    let wx = [0.5, 1.0, 2.0, 4.0];
    let w = wronskian_discrepancy(params, Complex64::new(1.5, 0.5), &wx, tol)?;
    let sig = sigma_discrepancy(params, &[0.5, 1.0, 2.0, 5.0])?;
    let counts = bound_counts(params)?;
    let green = green_discrepancy(
        params,
        Complex64::new(1.5, 0.5),
        &[(0.5, 1.0), (1.0, 2.5), (2.0, 2.0)],
    )?;
    let index = verify_index_with(params, DEFAULT_K_MAX, DEFAULT_S_MAX)?;
    let count_gap = |a: usize, b: usize| a.abs_diff(b) as f64;
    Ok(vec![
        Discrepancy::new("regular_solution", regular, REGULAR_TOL),
        Discrepancy::new("wronskian_spread", w.spread, WRONSKIAN_SPREAD_TOL),
        Discrepancy::new("wronskian_closed_form", w.closed_error, WRONSKIAN_TOL),
        Discrepancy::new("sigma_phase", sig, SIGMA_PHASE_TOL),
        Discrepancy::new("green_function", green, GREEN_TOL),
        Discrepancy::new(
            "bound_count_roots",
            count_gap(counts.formula, counts.wronskian_roots),
            0.0,
        ),
        Discrepancy::new(
            "bound_count_shooting",
            count_gap(counts.formula, counts.shooting),
            0.0,
        ),
        Discrepancy::new(
            "winding_vs_count",
            (index.winding_numeric - counts.formula as f64).abs(),
            1e-6,
        ),
    ])
}
