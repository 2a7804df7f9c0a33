//! Generalized Fourier kernels, the scattering function sigma and their
//! limiting forms.

pub mod transform;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{classify_beta, ModelParams};
use crate::phase::{unwrap_path, PhaseSample};
use crate::solutions::{Hyperbolic, Side, Solutions, SpectralPoint};
use crate::specfun::{
    bessel_script_j, beta_fn, gauss_2f1_complement, log_gamma, HypergeometricArgs,
};

pub use transform::{
    adjoint_transform, forward_transform, sine_transform, wave_operator_apply, KernelMatrix,
    QuadratureWarning, SampledFunction, Transformed,
};

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("need k > 0, got {k}")));
    }
    Ok(())
}

fn im_log_gamma(a: f64, k: f64) -> f64 {
    // a + ik/2 with k > 0 never hits a pole
    log_gamma(Complex64::new(a, k / 2.0))
        .map(|l| l.im)
        .unwrap_or(f64::NAN)
}

/// Continuous phase of sigma on k > 0 built from the principal log-gamma,
/// which is analytic in the upper half-plane.
pub fn sigma_phase_analytic(params: &ModelParams, k: f64) -> f64 {
    // paired as differences so that the free case cancels exactly
    2.0 * ((im_log_gamma(1.0, k) - im_log_gamma(params.alpha(), k))
        + (im_log_gamma(0.5, k) - im_log_gamma(params.beta(), k)))
}

/// sigma(k) = Gamma(alpha-ik/2) Gamma(beta-ik/2) Gamma(1+ik/2) Gamma(1/2+ik/2)
/// over the same product with i -> -i. Each factor pairs with its conjugate,
/// so the value is assembled as a pure phase.
pub fn sigma(params: &ModelParams, k: f64) -> Result<Complex64> {
    check_k(k)?;
    let ph = sigma_phase_analytic(params, k);
    if !ph.is_finite() {
        return Err(Error::Domain(format!("sigma phase not finite at k = {k}")));
    }
    Ok(Complex64::new(0.0, ph).exp())
}

/// sigma(0): -1 when beta is a nonpositive integer, +1 otherwise.
pub fn sigma_at_zero(params: &ModelParams) -> f64 {
    if classify_beta(params).is_negative_integer() {
        -1.0
    } else {
        1.0
    }
}

/// The k -> infinity limit e^{-i pi (mu - 1/2)}.
pub fn sigma_at_infinity(params: &ModelParams) -> Complex64 {
    Complex64::new(0.0, -PI * (params.mu - 0.5)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteringSample {
    pub k: f64,
    pub sigma: [f64; 2],
    pub phase: f64,
}

/// sigma on an increasing k-grid with a continuous phase anchored at
/// arg sigma(0) in {0, pi}. The path is refined from k = 0+ up to the first
/// grid point as well.
pub fn sigma_samples(params: &ModelParams, ks: &[f64]) -> Result<Vec<ScatteringSample>> {
    if ks.is_empty() {
        return Ok(Vec::new());
    }
    if ks.iter().any(|&k| !(k > 0.0)) || ks.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "k-grid must be positive and increasing".into(),
        ));
    }
    let anchor = if sigma_at_zero(params) < 0.0 { PI } else { 0.0 };
    let start = (ks[0] * 1e-3).min(1e-8);
    let mut grid = vec![start];
    grid.extend_from_slice(ks);
    let path = unwrap_path(|k| sigma(params, k), &grid, anchor)?;
    Ok(path[1..]
        .iter()
        .map(|s: &PhaseSample| ScatteringSample {
            k: s.t,
            sigma: [s.value.re, s.value.im],
            phase: s.phase,
        })
        .collect())
}

/// Per-k data for the generalized Fourier kernels.
#[derive(Debug, Clone)]
pub struct FourierKernel {
    solutions: Solutions,
    k: f64,
    /// -2^{-ik} sqrt(2/pi) k / W^+(k)
    minus_factor: Complex64,
    /// -2^{ik} sqrt(2/pi) k / W^-(k)
    plus_factor: Complex64,
}

impl FourierKernel {
    pub fn new(params: &ModelParams, k: f64) -> Result<Self> {
        check_k(k)?;
        let solutions = Solutions::new(params, SpectralPoint::boundary(k, Side::Plus)?)?;
        let w_plus = solutions.wronskian();
        let w_minus =
            crate::solutions::wronskian(params, SpectralPoint::boundary(k, Side::Minus)?)?;
        let two_ik = Complex64::new(0.0, k * std::f64::consts::LN_2).exp();
        Ok(FourierKernel {
            solutions,
            k,
            minus_factor: -two_ik.conj() * SQRT_2_OVER_PI * k / w_plus,
            plus_factor: -two_ik * SQRT_2_OVER_PI * k / w_minus,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// The real regular solution L(x, k).
    pub fn regular(&self, x: f64) -> Result<Complex64> {
        self.solutions.l(x)
    }

    pub fn eval(&self, side: Side, x: f64) -> Result<Complex64> {
        let l = self.solutions.l(x)?;
        Ok(match side {
            Side::Minus => self.minus_factor * l,
            Side::Plus => self.plus_factor * l,
        })
    }
}

/// F^{+/-}(x, k) = -2^{+/-ik} sqrt(2/pi) k L(x, k) / W^{-/+}(k).
pub fn fourier_kernel(params: &ModelParams, side: Side, x: f64, k: f64) -> Result<Complex64> {
    FourierKernel::new(params, k)?.eval(side, x)
}

/// (1/sqrt(2 pi)) tanh^{1/2+mu} x (2 cosh x)^{ik} F(alpha-ik/2, beta-ik/2; 1-ik; sech^2 x).
pub fn script_f(params: &ModelParams, x: f64, k: f64) -> Result<Complex64> {
    check_k(k)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("need x > 0, got {x}")));
    }
    let h = Hyperbolic::new(x);
    let ik = Complex64::new(0.0, k);
    let f = gauss_2f1_complement(
        HypergeometricArgs::new(
            params.alpha() - ik / 2.0,
            params.beta() - ik / 2.0,
            1.0 - ik,
            h.w,
        ),
        h.z,
    )?;
    let lp = (0.5 + params.mu) * h.ln_tanh + ik * (h.ln_cosh + std::f64::consts::LN_2);
    Ok(INV_SQRT_2PI * lp.exp() * f)
}

/// Large-x form (-i/sqrt(2 pi)) (e^{ikx} sigma(k) - e^{-ikx}) of F^-.
pub fn fourier_kernel_large_x(params: &ModelParams, x: f64, k: f64) -> Result<Complex64> {
    let e = Complex64::new(0.0, k * x).exp();
    Ok(Complex64::new(0.0, -INV_SQRT_2PI) * (e * sigma(params, k)? - e.conj()))
}

/// Small-x form of F^-: its leading coefficient times x^{1/2+mu}.
pub fn fourier_kernel_small_x(params: &ModelParams, x: f64, k: f64) -> Result<Complex64> {
    check_k(k)?;
    let ik = Complex64::new(0.0, k);
    let one = Complex64::new(1.0, 0.0);
    let lg = log_gamma(params.alpha() - ik / 2.0)? + log_gamma(params.beta() - ik / 2.0)?
        - log_gamma(one + params.mu)?
        - log_gamma(one - ik)?
        - ik * std::f64::consts::LN_2;
    Ok(k * INV_SQRT_2PI * lg.exp() * x.powf(0.5 + params.mu))
}

/// F^-(eps x, k / eps).
pub fn dilation_scaled_kernel(params: &ModelParams, eps: f64, x: f64, k: f64) -> Result<Complex64> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("need eps > 0, got {eps}")));
    }
    fourier_kernel(params, Side::Minus, eps * x, k / eps)
}

/// eps -> 0 limit: e^{-i pi (mu - 1/2)/2} sqrt(2/pi) J_mu(xk) in the
/// dimension-one normalization.
pub fn bessel_limit(params: &ModelParams, x: f64, k: f64) -> Complex64 {
    Complex64::new(0.0, -PI * (params.mu - 0.5) / 2.0).exp()
        * SQRT_2_OVER_PI
        * bessel_script_j(params.mu, x * k)
}

/// eps -> infinity limit (-i/sqrt(2 pi)) (e^{ikx} sigma(0) - e^{-ikx}).
pub fn plane_wave_limit(params: &ModelParams, x: f64, k: f64) -> Complex64 {
    let e = Complex64::new(0.0, k * x).exp();
    Complex64::new(0.0, -INV_SQRT_2PI) * (e * sigma_at_zero(params) - e.conj())
}

/// b(k) = sqrt(k) B(beta-ik/2, alpha-mu-ik/2) / (e^{i pi/4} 2^{ik} sqrt(2 pi)).
pub fn b_factor(params: &ModelParams, k: f64) -> Result<Complex64> {
    check_k(k)?;
    let ik2 = Complex64::new(0.0, k / 2.0);
    let b = beta_fn(params.beta() - ik2, params.alpha() - params.mu - ik2)?;
    let den = Complex64::new(0.0, PI / 4.0 + k * std::f64::consts::LN_2).exp() / INV_SQRT_2PI;
    Ok(k.sqrt() * b / den)
}
