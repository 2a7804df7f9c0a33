//! Independent checks by direct integration of -u'' + V u = E u.
//!
//! Nothing here touches hypergeometric functions: solutions come from an
//! adaptive Dormand-Prince 5(4) integrator acting on (Re u, Im u, Re u',
//! Im u'), scattering data from least-squares fits of the asymptotic plane
//! waves, and bound-state counts from Sturm node counting.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{potential_unchecked, ModelParams};
use crate::solutions::SpectralPoint;

pub const DEFAULT_TOL: f64 = 1e-10;
/// Starting point of the regular solution. The leading-power initial data
/// carry a relative error of order x0^2.
pub const DEFAULT_X0: f64 = 1e-5;
pub const DEFAULT_FIT_WINDOW: (f64, f64) = (8.0, 12.0);
pub const FIT_SAMPLES: usize = 64;
pub const MAX_FIT_CONDITION: f64 = 1e8;
/// Starting point of the decaying solution integrated inward.
pub const X_FAR: f64 = 30.0;

type State = [f64; 4];

#[derive(Debug, Clone, PartialEq)]
pub struct OdeSolution {
    pub x: Vec<f64>,
    pub u: Vec<Complex64>,
    pub du: Vec<Complex64>,
    pub tolerance: f64,
}

impl OdeSolution {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

fn rhs(params: &ModelParams, energy: Complex64, x: f64, y: &State) -> State {
    let v = potential_unchecked(params, x);
    // u'' = (V - E) u
    let (cr, ci) = (v - energy.re, -energy.im);
    [y[2], y[3], cr * y[0] - ci * y[1], cr * y[1] + ci * y[0]]
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order minus fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..4 {
            out[i] += h * c * k[i];
        }
    }
    out
}

fn norm(y: &State) -> f64 {
    y.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Adaptive integrator stepping through prescribed output points.
struct Stepper<'a> {
    params: &'a ModelParams,
    energy: Complex64,
    tol: f64,
    x: f64,
    y: State,
    k1: State,
    h: f64,
}

impl<'a> Stepper<'a> {
    fn new(
        params: &'a ModelParams,
        energy: Complex64,
        x: f64,
        y: State,
        h0: f64,
        tol: f64,
    ) -> Self {
        let k1 = rhs(params, energy, x, &y);
        Stepper {
            params,
            energy,
            tol,
            x,
            y,
            k1,
            h: h0,
        }
    }

    /// Try one step of size h (signed). Returns the new state, its
    /// derivative and the normalized error.
    fn attempt(&self, h: f64) -> (State, State, f64) {
        let (p, e, x, y, k1) = (self.params, self.energy, self.x, &self.y, &self.k1);
        let k2 = rhs(p, e, x + h / 5.0, &axpy(y, &[(A21, k1)], h));
        let k3 = rhs(
            p,
            e,
            x + 3.0 * h / 10.0,
            &axpy(y, &[(A31, k1), (A32, &k2)], h),
        );
        let k4 = rhs(
            p,
            e,
            x + 4.0 * h / 5.0,
            &axpy(y, &[(A41, k1), (A42, &k2), (A43, &k3)], h),
        );
        let k5 = rhs(
            p,
            e,
            x + 8.0 * h / 9.0,
            &axpy(y, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
        );
        let k6 = rhs(
            p,
            e,
            x + h,
            &axpy(
                y,
                &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                h,
            ),
        );
        let y_new = axpy(
            y,
            &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)],
            h,
        );
        let k7 = rhs(p, e, x + h, &y_new);
        let mut err = [0.0; 4];
        for i in 0..4 {
            err[i] =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        let scale = self.tol * norm(y).max(norm(&y_new)).max(1e-300);
        (y_new, k7, norm(&err) / scale)
    }

    /// Advance exactly to `target`.
    fn advance_to(&mut self, target: f64) -> Result<()> {
        let dir = (target - self.x).signum();
        while (target - self.x) * dir > 0.0 {
            let remaining = target - self.x;
            let mut h = self.h.abs().min(remaining.abs()) * dir;
            loop {
                if h.abs() < 1e-14 * self.x.abs().max(1e-300) {
                    return Err(Error::StepFailure(self.x));
                }
                let (y_new, k_new, err) = self.attempt(h);
                if err <= 1.0 && y_new.iter().all(|v| v.is_finite()) {
                    let last = h == remaining;
                    self.x = if last { target } else { self.x + h };
                    self.y = y_new;
                    self.k1 = k_new;
                    let grow = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    // keep the proposal from the unclipped step when clipped
                    if !last || h.abs() >= self.h.abs() {
                        self.h = h.abs() * grow;
                    }
                    break;
                }
                let shrink = if err.is_finite() {
                    (0.9 * err.powf(-0.2)).clamp(0.1, 0.5)
                } else {
                    0.1
                };
                h *= shrink;
            }
        }
        Ok(())
    }

    fn value(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.y[0], self.y[1]),
            Complex64::new(self.y[2], self.y[3]),
        )
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(1e-13..=1e-3).contains(&tol) {
        return Err(Error::Domain(format!(
            "ODE tolerance {tol} outside [1e-13, 1e-3]"
        )));
    }
    Ok(())
}

/// Integrates from `x_start` with data (u, u') to each point of `targets`
/// (monotone in the direction of integration).
pub fn integrate_from(
    params: &ModelParams,
    energy: Complex64,
    x_start: f64,
    data: (Complex64, Complex64),
    targets: &[f64],
    tol: f64,
) -> Result<OdeSolution> {
    check_tol(tol)?;
    let y0 = [data.0.re, data.0.im, data.1.re, data.1.im];
    let h0 = (1e-3 * x_start.abs()).max(1e-8);
    let mut st = Stepper::new(params, energy, x_start, y0, h0, tol);
    let mut sol = OdeSolution {
        x: Vec::with_capacity(targets.len()),
        u: Vec::with_capacity(targets.len()),
        du: Vec::with_capacity(targets.len()),
        tolerance: tol,
    };
    for &t in targets {
        st.advance_to(t)?;
        let (u, du) = st.value();
        sol.x.push(t);
        sol.u.push(u);
        sol.du.push(du);
    }
    Ok(sol)
}

/// Leading-order regular data at x0: u = x0^{1/2+mu}, u' = (1/2+mu) x0^{-1/2+mu}.
pub fn regular_data(params: &ModelParams, x0: f64) -> (Complex64, Complex64) {
    let p = 0.5 + params.mu;
    (
        Complex64::new(x0.powf(p), 0.0),
        Complex64::new(p * x0.powf(p - 1.0), 0.0),
    )
}

/// Regular solution sampled at the given increasing points, all > x0.
pub fn integrate_regular_at(
    params: &ModelParams,
    energy: Complex64,
    x0: f64,
    xs: &[f64],
    tol: f64,
) -> Result<OdeSolution> {
    if !(x0 > 0.0) || xs.iter().any(|&x| x < x0) || xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain(
            "output points must be increasing and >= x0".into(),
        ));
    }
    integrate_from(params, energy, x0, regular_data(params, x0), xs, tol)
}

/// Regular solution on [x0, x1] with 200 equally spaced outputs.
pub fn integrate_regular(
    params: &ModelParams,
    energy: Complex64,
    x0: f64,
    x1: f64,
    tol: f64,
) -> Result<OdeSolution> {
    if !(x0 > 0.0 && x1 > x0) {
        return Err(Error::Domain(format!("need 0 < x0 < x1, got {x0}, {x1}")));
    }
    let n = 200;
    let xs: Vec<f64> = (0..=n)
        .map(|i| x0 + (x1 - x0) * i as f64 / n as f64)
        .collect();
    integrate_regular_at(params, energy, x0, &xs, tol)
}

/// Decaying solution with data e^{-zeta x} at `x_far`, integrated inward to
/// the given decreasing points.
pub fn integrate_decaying_at(
    params: &ModelParams,
    zeta: Complex64,
    x_far: f64,
    xs_decreasing: &[f64],
    tol: f64,
) -> Result<OdeSolution> {
    let v = (-zeta * x_far).exp();
    integrate_from(
        params,
        -zeta * zeta,
        x_far,
        (v, -zeta * v),
        xs_decreasing,
        tol,
    )
}

/// L * M' - L' * M for two (u, u') pairs.
pub fn wronskian_of(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> Complex64 {
    a.0 * b.1 - a.1 * b.0
}

/// Hermitian 2x2 condition number.
fn condition_2x2(a: f64, b: Complex64, d: f64) -> f64 {
    let tr = a + d;
    let disc = ((a - d) * (a - d) + 4.0 * b.norm_sqr()).sqrt();
    let (l1, l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    if l2 <= 0.0 {
        f64::INFINITY
    } else {
        l1 / l2
    }
}

/// Least-squares amplitudes (A, B) of u ~ A e^{ikx} + B e^{-ikx}.
pub fn fit_plane_waves(k: f64, xs: &[f64], u: &[Complex64]) -> Result<(Complex64, Complex64)> {
    let mut g11 = 0.0;
    let mut g12 = Complex64::new(0.0, 0.0);
    let mut r1 = Complex64::new(0.0, 0.0);
    let mut r2 = Complex64::new(0.0, 0.0);
    for (&x, &ux) in xs.iter().zip(u) {
        let e = Complex64::new(0.0, k * x).exp();
        // columns e and conj(e)
        g11 += 1.0;
        g12 += e.conj() * e.conj();
        r1 += e.conj() * ux;
        r2 += e * ux;
    }
    let g22 = g11;
    let cond = condition_2x2(g11, g12, g22);
    if cond > MAX_FIT_CONDITION {
        return Err(Error::IllConditioned(cond));
    }
    let det = g11 * g22 - g12.norm_sqr();
    let a = (g22 * r1 - g12 * r2) / det;
    let b = (g11 * r2 - g12.conj() * r1) / det;
    Ok((a, b))
}

/// sigma(k) from the regular solution at energy k^2, as -A/B of the fitted
/// outgoing and incoming amplitudes on `window`.
pub fn extract_sigma(params: &ModelParams, k: f64, window: (f64, f64)) -> Result<Complex64> {
    extract_sigma_with(params, k, window, DEFAULT_X0, 1e-12)
}

pub fn extract_sigma_with(
    params: &ModelParams,
    k: f64,
    window: (f64, f64),
    x0: f64,
    tol: f64,
) -> Result<Complex64> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("extract_sigma needs k > 0, got {k}")));
    }
    let (lo, hi) = window;
    if !(lo >= 6.0 && hi > lo) {
        return Err(Error::Domain(format!(
            "fit window [{lo}, {hi}] must lie in [6, inf)"
        )));
    }
    let xs: Vec<f64> = (0..FIT_SAMPLES)
        .map(|i| lo + (hi - lo) * i as f64 / (FIT_SAMPLES - 1) as f64)
        .collect();
    let sol = integrate_regular_at(params, Complex64::new(k * k, 0.0), x0, &xs, tol)?;
    let (a, b) = fit_plane_waves(k, &sol.x, &sol.u)?;
    Ok(-a / b)
}

/// How far past the last node the shooting integration may need to go.
const SHOOT_FAR: f64 = 5000.0;
/// Beyond this point the potential is below 1e-30 for all supported
/// parameters and a solution moving away from zero never returns.
const SHOOT_FREE_FROM: f64 = 40.0;
const SHOOT_ENERGY: f64 = -1e-4;

/// Sign changes of the regular solution at energy `energy` < 0 on (x0, inf).
pub fn count_nodes(params: &ModelParams, energy: f64, tol: f64) -> Result<usize> {
    let x0 = DEFAULT_X0;
    let e = Complex64::new(energy, 0.0);
    let (u0, du0) = regular_data(params, x0);
    let mut st = Stepper::new(params, e, x0, [u0.re, 0.0, du0.re, 0.0], 1e-3 * x0, tol);
    let mut nodes = 0;
    let mut prev = st.y[0];
    let mut x = x0;
    while x < SHOOT_FAR {
        let next = if x < 1.0 { x * 1.5 } else { x + 0.25 };
        st.advance_to(next)?;
        x = next;
        if norm(&st.y) > 1e200 {
            // linear equation: rescaling leaves the nodes alone
            for v in st.y.iter_mut().chain(st.k1.iter_mut()) {
                *v *= 1e-200;
            }
        }
        let u = st.y[0];
        if u == 0.0 || (u > 0.0) != (prev > 0.0) {
            nodes += 1;
        }
        if u != 0.0 {
            prev = u;
        }
        if x > SHOOT_FREE_FROM && st.y[0] * st.y[2] > 0.0 {
            return Ok(nodes);
        }
    }
    Ok(nodes)
}

/// Number of bound states from Sturm oscillation: nodes just below zero
/// energy minus nodes at `e_min`.
pub fn count_bound_states_shooting(params: &ModelParams, e_min: f64) -> Result<usize> {
    if !(e_min < SHOOT_ENERGY) {
        return Err(Error::Domain(format!("e_min = {e_min} must be negative")));
    }
    let top = count_nodes(params, SHOOT_ENERGY, 1e-10)?;
    let bottom = count_nodes(params, e_min, 1e-10)?;
    Ok(top.saturating_sub(bottom))
}

/// Resolvent kernel built from two integrated solutions: the regular one
/// from x0 and the decaying one from `X_FAR` inward.
pub fn greens_function_oracle(
    params: &ModelParams,
    pt: SpectralPoint,
    x: f64,
    y: f64,
) -> Result<Complex64> {
    let zeta = match pt {
        SpectralPoint::Interior(z) => z,
        SpectralPoint::Boundary { .. } => {
            return Err(Error::Domain(
                "the Green function oracle needs an interior point".into(),
            ))
        }
    };
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    if !(lo > DEFAULT_X0 && hi < X_FAR) {
        return Err(Error::Domain(format!(
            "points must lie in ({DEFAULT_X0}, {X_FAR})"
        )));
    }
    let energy = -zeta * zeta;
    let reg = integrate_regular_at(params, energy, DEFAULT_X0, &[lo, hi], DEFAULT_TOL * 1e-2)?;
    let dec = integrate_decaying_at(params, zeta, X_FAR, &[hi, lo], DEFAULT_TOL * 1e-2)?;
    let w = wronskian_of((reg.u[1], reg.du[1]), (dec.u[0], dec.du[0]));
    Ok(-reg.u[0] * dec.u[0] / w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(mu: f64, nu: f64) -> ModelParams {
        ModelParams::new(mu, nu).unwrap()
    }

    #[test]
    fn free_case_is_sine() {
        let p = params(0.5, 0.5);
        let k = 1.7;
        let xs: Vec<f64> = (1..=50).map(|i| 0.2 * i as f64).collect();
        let sol = integrate_regular_at(&p, Complex64::new(k * k, 0.0), 1e-6, &xs, 1e-11).unwrap();
        // u(x0) = x0, u'(x0) = 1 gives sin(k (x - x0)) / k + x0 cos(...)
        for (x, u) in sol.x.iter().zip(&sol.u) {
            let want = (k * x).sin() / k;
            assert!((u.re - want).abs() < 1e-8, "x = {x}: {u} vs {want}");
        }
    }

    #[test]
    fn wronskian_of_two_solutions_is_constant() {
        let p = params(1.0, 2.0);
        let zeta = Complex64::new(1.5, 0.5);
        let xs = [0.5, 1.0, 2.0, 4.0];
        let mut rev = xs.to_vec();
        rev.reverse();
        let reg = integrate_regular_at(&p, -zeta * zeta, 1e-5, &xs, 1e-11).unwrap();
        let dec = integrate_decaying_at(&p, zeta, X_FAR, &rev, 1e-11).unwrap();
        let w: Vec<Complex64> = (0..4)
            .map(|i| wronskian_of((reg.u[i], reg.du[i]), (dec.u[3 - i], dec.du[3 - i])))
            .collect();
        for wi in &w {
            assert!((wi - w[0]).norm() < 1e-8 * w[0].norm());
        }
    }

    #[test]
    fn free_sigma_is_one() {
        let s = extract_sigma(&params(0.5, 0.5), 1.3, DEFAULT_FIT_WINDOW).unwrap();
        assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn short_window_is_ill_conditioned() {
        let e = fit_plane_waves(1e-3, &[8.0, 8.001, 8.002], &[Complex64::new(1.0, 0.0); 3]);
        assert!(matches!(e, Err(Error::IllConditioned(_))));
    }

    #[test]
    fn shooting_counts() {
        assert_eq!(
            count_bound_states_shooting(&params(2.0, 0.0), -25.0).unwrap(),
            0
        );
        assert_eq!(
            count_bound_states_shooting(&params(0.0, 3.0), -25.0).unwrap(),
            1
        );
        assert_eq!(
            count_bound_states_shooting(&params(0.0, 5.0), -49.0).unwrap(),
            2
        );
    }

    #[test]
    fn free_green_function() {
        // Dirichlet Green function of -d^2 + zeta^2: sinh(zeta x<) e^{-zeta x>} / zeta
        let p = params(0.5, 0.5);
        let zeta = Complex64::new(1.0, 0.0);
        let g = greens_function_oracle(&p, SpectralPoint::Interior(zeta), 0.7, 1.9).unwrap();
        let want = (zeta * 0.7).sinh() * (-zeta * 1.9).exp() / zeta;
        assert!((g - want).norm() < 1e-7 * want.norm(), "{g} vs {want}");
        let g2 = greens_function_oracle(&p, SpectralPoint::Interior(zeta), 1.9, 0.7).unwrap();
        assert!((g - g2).norm() < 1e-12 * g.norm());
    }
}
