//! The dimension-one Bessel function J_mu(x) scaled by sqrt(pi x / 2).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::log_gamma;

/// Above this argument the ascending series is replaced by the Hankel
/// expansion, provided the order is moderate.
const ASYMPTOTIC_FROM: f64 = 20.0;
/// Above this argument the series cancels badly and backward recurrence is
/// used instead.
const MILLER_FROM: f64 = 6.0;

fn ascending(mu: f64, x: f64) -> f64 {
    // sqrt(pi x/2) (x/2)^mu / Gamma(mu+1) * sum (-x^2/4)^k / (k! (mu+1)_k)
    let lg = log_gamma(Complex64::new(mu + 1.0, 0.0))
        .map(|l| l.re)
        .unwrap_or(f64::NAN);
    let log_pref = 0.5 * (PI * x / 2.0).ln() + mu * (x / 2.0).ln() - lg;
    let q = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..1000 {
        let kf = k as f64;
        term *= q / (kf * (mu + kf));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) && kf > x {
            break;
        }
    }
    log_pref.exp() * sum
}

/// Miller backward recurrence on J_{mu+j}, normalized with the Neumann sum
/// (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x).
fn miller(mu: f64, x: f64) -> f64 {
    let top = (1.5 * x + 40.0 + mu) as usize;
    let lg = |t: f64| {
        log_gamma(Complex64::new(t, 0.0))
            .map(|l| l.re)
            .unwrap_or(f64::NAN)
    };
    let mut next = 0.0;
    let mut cur = 1e-300;
    let mut norm = 0.0;
    let mut j0 = 0.0;
    for j in (0..=top).rev() {
        let order = mu + j as f64;
        if j % 2 == 0 {
            let k = j / 2;
            let w = if k == 0 {
                lg(mu + 1.0).exp()
            } else {
                (mu + 2.0 * k as f64) * (lg(mu + k as f64) - lg(k as f64 + 1.0)).exp()
            };
            norm += w * cur;
        }
        if j == 0 {
            j0 = cur;
            break;
        }
        let prev = 2.0 * order / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
        }
    }
    let j = j0 * (mu * (x / 2.0).ln()).exp() / norm;
    (PI * x / 2.0).sqrt() * j
}

/// Hankel expansion; `None` when the terms start growing before reaching
/// double precision.
fn hankel(mu: f64, x: f64) -> Option<f64> {
    let m4 = 4.0 * mu * mu;
    let chi = x - (mu / 2.0 + 0.25) * PI;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (m4 - odd * odd) / (kf * 8.0 * x);
        let mag = a.abs();
        if mag > prev {
            return None;
        }
        prev = mag;
        // a_k / x^k with sign (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if mag < 1e-17 {
            return Some(p * chi.cos() - q * chi.sin());
        }
    }
    None
}

/// sqrt(pi x / 2) J_mu(x) for mu >= 0, x > 0; zero for x <= 0.
pub fn bessel_script_j(mu: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x > ASYMPTOTIC_FROM {
        if let Some(v) = hankel(mu, x) {
            return v;
        }
    }
    if x > MILLER_FROM {
        miller(mu, x)
    } else {
        ascending(mu, x)
    }
}
