//! Resolvent kernels, spectral density and bound states.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{classify_beta, BetaClass, ModelParams};
use crate::quadrature::adaptive;
use crate::solutions::{wronskian_real, Side, Solutions, SpectralPoint};
use crate::specfun::rgamma;

/// Relative size of 1/Gamma(beta + zeta/2) below which zeta is treated as an
/// eigenvalue.
pub const EIGENVALUE_THRESHOLD: f64 = 1e-13;
/// Offset of the eigenvalue search bracket from its ends.
pub const ROOT_BRACKET_DELTA: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub x: f64,
    pub y: f64,
    pub point: SpectralPoint,
}

fn ordered(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Domain(format!(
            "kernel points must be positive, got ({x}, {y})"
        )));
    }
    Ok(if x <= y { (x, y) } else { (y, x) })
}

/// R(-zeta^2; x, y) = -L(min) M(max) / W(zeta).
pub fn resolvent_kernel(
    params: &ModelParams,
    pt: SpectralPoint,
    x: f64,
    y: f64,
) -> Result<Complex64> {
    let zeta = match pt {
        SpectralPoint::Interior(z) => z,
        SpectralPoint::Boundary { .. } => {
            return Err(Error::Domain(
                "resolvent_kernel needs an interior point".into(),
            ))
        }
    };
    let (lo, hi) = ordered(x, y)?;
    let s = Solutions::new(params, pt)?;
    let gap = rgamma(params.beta() + zeta / 2.0).norm();
    if gap < EIGENVALUE_THRESHOLD {
        return Err(Error::AtEigenvalue(s.wronskian().norm()));
    }
    Ok(-s.l(lo)? * s.m(hi)? / s.wronskian())
}

/// Boundary value R(k^2 +/- i0; x, y) = -L(min, k) M^{+/-}(max, k) / W^{+/-}(k).
pub fn resolvent_boundary_kernel(
    params: &ModelParams,
    k: f64,
    side: Side,
    x: f64,
    y: f64,
) -> Result<Complex64> {
    let (lo, hi) = ordered(x, y)?;
    let s = Solutions::new(params, SpectralPoint::boundary(k, side)?)?;
    Ok(-s.l(lo)? * s.m(hi)? / s.wronskian())
}

/// p(k^2; x, y) = (k/pi) L(x, k) L(y, k) / |W^+(k)|^2.
pub fn spectral_density_kernel(params: &ModelParams, k: f64, x: f64, y: f64) -> Result<Complex64> {
    ordered(x, y)?;
    let s = Solutions::new(params, SpectralPoint::boundary(k, Side::Plus)?)?;
    Ok(k / PI * s.l(x)? * s.l(y)? / s.wronskian().norm_sqr())
}

/// psi(x, k) = k L(x, k) / W^+(k).
pub fn psi(params: &ModelParams, x: f64, k: f64) -> Result<Complex64> {
    let s = Solutions::new(params, SpectralPoint::boundary(k, Side::Plus)?)?;
    Ok(k * s.l(x)? / s.wronskian())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundLevel {
    pub n: u64,
    pub zeta: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundStateReport {
    pub count: usize,
    pub levels: Vec<BoundLevel>,
}

/// ceil((nu - mu - 1)/2) when 1 + mu <= nu, else 0, with the integer case
/// decided by the beta classification.
pub fn bound_state_count(params: &ModelParams) -> usize {
    match classify_beta(params) {
        BetaClass::Positive => 0,
        BetaClass::NegativeInteger { n } | BetaClass::NegativeNoninteger { n, .. } => n as usize,
    }
}

pub fn bound_states(params: &ModelParams) -> BoundStateReport {
    let count = bound_state_count(params);
    let top = params.nu - params.mu - 1.0;
    let levels = (0..count as u64)
        .map(|n| {
            let zeta = top - 2.0 * n as f64;
            BoundLevel {
                n,
                zeta,
                energy: -zeta * zeta,
            }
        })
        .collect();
    BoundStateReport { count, levels }
}

/// Zeros of the real Wronskian on (lo, hi], located by a sign-change scan
/// and refined by bisection to `tol`. Returned in decreasing order.
pub fn wronskian_roots(params: &ModelParams, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    if !(hi > lo) {
        return Vec::new();
    }
    let w = |z: f64| wronskian_real(params, z);
    // step chosen so grid points avoid the lattice of candidate roots
    let step = 0.093_752_1;
    let n = ((hi - lo) / step).ceil() as usize;
    let mut roots = Vec::new();
    let mut a = lo;
    let mut wa = w(a);
    for i in 1..=n {
        let b = if i == n { hi } else { lo + i as f64 * step };
        let wb = w(b);
        if wb == 0.0 {
            roots.push(b);
        } else if wa != 0.0 && (wa > 0.0) != (wb > 0.0) {
            let (mut l, mut r, mut wl) = (a, b, wa);
            while r - l > tol {
                let m = 0.5 * (l + r);
                let wm = w(m);
                if wm == 0.0 {
                    l = m;
                    r = m;
                    break;
                }
                if (wm > 0.0) == (wl > 0.0) {
                    l = m;
                    wl = wm;
                } else {
                    r = m;
                }
            }
            roots.push(0.5 * (l + r));
        }
        a = b;
        wa = wb;
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    roots
}

/// Eigenvalue search on the bracket (delta, nu - mu - 1 + delta].
pub fn eigenvalue_search(params: &ModelParams) -> Vec<f64> {
    let d = ROOT_BRACKET_DELTA;
    wronskian_roots(params, d, params.nu - params.mu - 1.0 + d, 1e-13)
}

/// Bound-state profile x -> M(x, zeta_n), optionally L^2-normalized.
#[derive(Debug, Clone)]
pub struct Eigenfunction {
    solutions: Solutions,
    level: BoundLevel,
    scale: f64,
}

impl Eigenfunction {
    pub fn level(&self) -> BoundLevel {
        self.level
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(self.scale * self.solutions.m(x)?.re)
    }

    /// Rescale to unit L^2 norm, integrating adaptively to relative 1e-8.
    pub fn normalized(mut self) -> Result<Self> {
        self.scale = 1.0;
        let far = 10.0 + 40.0 / self.level.zeta;
        let sq = |x: f64| {
            let v = self.solutions.m(x).map(|m| m.re).unwrap_or(f64::NAN);
            v * v
        };
        let mut total = 0.0;
        let mut a = 0.0;
        while a < far {
            let b = (a + 2.0).min(far);
            total += adaptive(sq, a.max(1e-300), b, 1e-10).0;
            a = b;
        }
        if !(total.is_finite() && total > 0.0) {
            return Err(Error::Domain(format!(
                "eigenfunction norm {total} is not positive"
            )));
        }
        self.scale = 1.0 / total.sqrt();
        Ok(self)
    }
}

pub fn eigenfunction(params: &ModelParams, n: usize) -> Result<Eigenfunction> {
    let report = bound_states(params);
    if n >= report.count {
        return Err(Error::Index {
            index: n,
            count: report.count,
        });
    }
    let level = report.levels[n];
    let solutions = Solutions::new(
        params,
        SpectralPoint::Interior(Complex64::new(level.zeta, 0.0)),
    )?;
    Ok(Eigenfunction {
        solutions,
        level,
        scale: 1.0,
    })
}
