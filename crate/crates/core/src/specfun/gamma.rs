//! Complex gamma family: log-gamma, reciprocal gamma, digamma, Beta and
//! Pochhammer symbols.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Lanczos parameter g = 607/128 with the matching 15-term coefficient set.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_048_8e-4,
    2.174_396_181_152_126_5e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162_4e-6,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// True when `z` is exactly one of 0, -1, -2, ...
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// sin(pi z) with the real part reduced to [-1/2, 1/2] first, so that zeros
/// at the integers are exact.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let r = z.re.round();
    let f = z.re - r;
    let sign = if (r as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let (s, c) = (PI * f).sin_cos();
    let y = PI * z.im;
    Complex64::new(sign * s * y.cosh(), sign * c * y.sinh())
}

fn cos_pi(z: Complex64) -> Complex64 {
    let r = z.re.round();
    let f = z.re - r;
    let sign = if (r as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let (s, c) = (PI * f).sin_cos();
    let y = PI * z.im;
    Complex64::new(sign * c * y.cosh(), -sign * s * y.sinh())
}

fn cot_pi(z: Complex64) -> Complex64 {
    if z.im.abs() > 5.0 {
        // cot(pi z) = i (e^{2 pi i z} + 1) / (e^{2 pi i z} - 1) for Im z > 0
        let upper = Complex64::new(z.re, z.im.abs());
        let e = (Complex64::new(0.0, 2.0 * PI) * upper).exp();
        let v = Complex64::i() * (e + 1.0) / (e - 1.0);
        if z.im > 0.0 {
            v
        } else {
            v.conj()
        }
    } else {
        cos_pi(z) / sin_pi(z)
    }
}

/// Lanczos log-gamma, valid for Re z >= 1/2 and Im z >= 0.
fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += *c / (zm + k as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (zm + 0.5) * t.ln() - t + series.ln()
}

/// log sin(pi z) modulo 2 pi i, for Im z >= 0.
fn ln_sin_pi_upper(z: Complex64) -> Complex64 {
    if z.im <= 5.0 {
        sin_pi(z).ln()
    } else {
        let e = (Complex64::new(0.0, 2.0 * PI) * z).exp();
        Complex64::new(0.0, -PI) * z
            + (Complex64::new(1.0, 0.0) - e).ln()
            + Complex64::new(-std::f64::consts::LN_2, PI / 2.0)
    }
}

/// Log-gamma for Im z >= 0 away from poles.
fn ln_gamma_upper(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        return ln_gamma_lanczos(z);
    }
    let reflected = LN_PI - ln_sin_pi_upper(z) - ln_gamma_lanczos(1.0 - z);
    // Pick the sheet that continues log Gamma analytically off the negative
    // axis: the upward recurrence with principal logs fixes Im log Gamma.
    let shift = (0.5 - z.re).ceil() as usize;
    let mut im = ln_gamma_lanczos(z + shift as f64).im;
    for j in 0..shift {
        im -= (z + j as f64).arg();
    }
    let turns = ((im - reflected.im) / (2.0 * PI)).round();
    Complex64::new(reflected.re, reflected.im + 2.0 * PI * turns)
}

/// Principal branch of log Gamma(z): analytic in the plane cut along the
/// negative real axis, real on the positive axis. On the cut itself the
/// limit from above is returned.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("log_gamma of non-finite {z}")));
    }
    if z.im >= 0.0 {
        Ok(ln_gamma_upper(z))
    } else {
        Ok(ln_gamma_upper(z.conj()).conj())
    }
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

/// 1/Gamma(z), an entire function. Exactly zero at the poles of Gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 || z.im.abs() > 5.0 {
        // log_gamma cannot fail here: z is finite and not a pole
        match log_gamma(z) {
            Ok(l) => (-l).exp(),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    } else {
        let one_minus = 1.0 - z;
        let g = if one_minus.im >= 0.0 {
            ln_gamma_lanczos(one_minus).exp()
        } else {
            ln_gamma_lanczos(one_minus.conj()).exp().conj()
        };
        sin_pi(z) * g / PI
    }
}

/// Product of Gamma over `num` divided by product of Gamma over `den`,
/// evaluated in log space. Poles in `den` give an exact zero; poles in `num`
/// are an error.
pub fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &z in num {
        acc += log_gamma(z)?;
    }
    let mut scale = Complex64::new(1.0, 0.0);
    for &z in den {
        if is_nonpositive_integer(z) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if z.re < 0.5 && z.im.abs() <= 5.0 {
            // Keep sign and near-pole behaviour exact through rgamma.
            scale *= rgamma(z);
        } else {
            acc -= log_gamma(z)?;
        }
    }
    Ok(acc.exp() * scale)
}

/// Pochhammer symbol (q)_n = q (q+1) ... (q+n-1), with (q)_0 = 1.
pub fn pochhammer(q: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (q + j as f64))
}

/// Beta function Gamma(a) Gamma(b) / Gamma(a+b).
pub fn beta_fn(a: Complex64, b: Complex64) -> Result<Complex64> {
    let s = a + b;
    if is_nonpositive_integer(s) {
        return Err(Error::Pole { re: s.re, im: s.im });
    }
    Ok((log_gamma(a)? + log_gamma(b)? - log_gamma(s)?).exp())
}

// B_{2k} / (2k) for the digamma asymptotic series.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Digamma psi(z) = Gamma'(z)/Gamma(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < 0.5 {
        return Ok(digamma(1.0 - z)? - PI * cot_pi(z));
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.norm() < 10.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut tail = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for c in DIGAMMA_ASYMPTOTIC {
        tail += c * p;
        p *= inv2;
    }
    Ok(acc + w.ln() - 0.5 / w - tail)
}

/// Real reciprocal gamma, continuous through the poles of Gamma.
pub fn rgamma_real(x: f64) -> f64 {
    rgamma(Complex64::new(x, 0.0)).re
}
