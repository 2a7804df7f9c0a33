//! Closed-form solutions L, M, N of -u'' + V u = -zeta^2 u, the connection
//! formula and the Wronskian.
//!
//! M is evaluated in the form tanh^{1/2+mu} cosh^{-zeta} F(alpha+zeta/2,
//! beta+zeta/2; 1+zeta; sech^2 x) and N in the form with zeta -> -zeta. All
//! hyperbolic prefactors are assembled in log space from e^{-2x}, which keeps
//! them finite and accurate for large x.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::specfun::{
    gamma_ratio, gauss_2f1_complement, integer_gap, is_nonpositive_integer, HypergeometricArgs,
    SERIES_THRESHOLD,
};

/// Largest |zeta| tanh x for which L is summed from its series in tanh^2 x.
/// Beyond it the series terms grow like e^{|zeta| tanh x} before cancelling.
pub const L_SERIES_GROWTH_LIMIT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralPoint {
    /// zeta with Re zeta > 0; the spectral parameter is -zeta^2.
    Interior(Complex64),
    /// k > 0 on the continuous spectrum, side + for zeta = -ik and side - for
    /// zeta = +ik.
    Boundary { k: f64, side: Side },
}

impl SpectralPoint {
    pub fn interior(zeta: Complex64) -> Result<Self> {
        if !(zeta.re > 0.0) || !zeta.im.is_finite() || !zeta.re.is_finite() {
            return Err(Error::Domain(format!(
                "interior point needs Re zeta > 0, got {zeta}"
            )));
        }
        Ok(SpectralPoint::Interior(zeta))
    }

    pub fn boundary(k: f64, side: Side) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!(
                "boundary point needs k > 0, got {k}"
            )));
        }
        Ok(SpectralPoint::Boundary { k, side })
    }

    pub fn zeta(&self) -> Complex64 {
        match *self {
            SpectralPoint::Interior(z) => z,
            SpectralPoint::Boundary { k, side } => Complex64::new(0.0, -side.sign() * k),
        }
    }

    /// Spectral parameter -zeta^2.
    pub fn energy(&self) -> Complex64 {
        let z = self.zeta();
        -z * z
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, SpectralPoint::Boundary { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    L,
    M,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionValue {
    pub value: Complex64,
    pub which: Which,
    pub x: f64,
    pub point: SpectralPoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCoefficients {
    pub c_m: Complex64,
    pub c_n: Complex64,
}

/// Hyperbolic data at one x, all derived from e^{-2x}.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Hyperbolic {
    pub ln_tanh: f64,
    pub ln_cosh: f64,
    /// tanh^2 x
    pub z: f64,
    /// sech^2 x = 1 - tanh^2 x
    pub w: f64,
    pub tanh: f64,
}

impl Hyperbolic {
    pub fn new(x: f64) -> Self {
        let e = (-2.0 * x).exp();
        let one_minus = -(-2.0 * x).exp_m1();
        let tanh = one_minus / (1.0 + e);
        let ln_tanh = one_minus.ln() - e.ln_1p();
        let ln_cosh = x + e.ln_1p() - std::f64::consts::LN_2;
        let w = 4.0 * e / ((1.0 + e) * (1.0 + e));
        Hyperbolic {
            ln_tanh,
            ln_cosh,
            z: tanh * tanh,
            w,
            tanh,
        }
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("solutions need x > 0, got {x}")));
    }
    Ok(())
}

/// Closed-form solutions at a fixed (params, spectral point), with the
/// x-independent gamma factors computed once.
#[derive(Debug, Clone)]
pub struct Solutions {
    params: ModelParams,
    point: SpectralPoint,
    zeta: Complex64,
    connection: Option<ConnectionCoefficients>,
    wronskian: Complex64,
}

impl Solutions {
    pub fn new(params: &ModelParams, point: SpectralPoint) -> Result<Self> {
        let zeta = point.zeta();
        let connection = connection_coefficients_raw(params, zeta).ok();
        Ok(Solutions {
            params: *params,
            point,
            zeta,
            connection,
            wronskian: wronskian_at(params, zeta)?,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn point(&self) -> SpectralPoint {
        self.point
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn wronskian(&self) -> Complex64 {
        self.wronskian
    }

    pub fn connection(&self) -> Option<ConnectionCoefficients> {
        self.connection
    }

    /// log of tanh^{1/2+mu} cosh^{s zeta}
    fn log_prefactor(&self, h: &Hyperbolic, s: f64) -> Complex64 {
        (0.5 + self.params.mu) * h.ln_tanh + s * self.zeta * h.ln_cosh
    }

    fn m_parts(&self, h: &Hyperbolic) -> Result<(Complex64, Complex64)> {
        let (al, be) = (self.params.alpha(), self.params.beta());
        let z2 = self.zeta / 2.0;
        let f = gauss_2f1_complement(
            HypergeometricArgs::new(al + z2, be + z2, 1.0 + self.zeta, h.w),
            h.z,
        )?;
        Ok((self.log_prefactor(h, -1.0), f))
    }

    fn n_parts(&self, h: &Hyperbolic) -> Result<(Complex64, Complex64)> {
        let (al, be) = (self.params.alpha(), self.params.beta());
        let z2 = self.zeta / 2.0;
        let f = gauss_2f1_complement(
            HypergeometricArgs::new(al - z2, be - z2, 1.0 - self.zeta, h.w),
            h.z,
        )?;
        Ok((self.log_prefactor(h, 1.0), f))
    }

    pub fn m(&self, x: f64) -> Result<Complex64> {
        check_x(x)?;
        let (lp, f) = self.m_parts(&Hyperbolic::new(x))?;
        Ok(lp.exp() * f)
    }

    pub fn n(&self, x: f64) -> Result<Complex64> {
        check_x(x)?;
        let (lp, f) = self.n_parts(&Hyperbolic::new(x))?;
        Ok(lp.exp() * f)
    }

    pub fn l(&self, x: f64) -> Result<Complex64> {
        check_x(x)?;
        let h = Hyperbolic::new(x);
        let (al, be) = (self.params.alpha(), self.params.beta());
        let z2 = self.zeta / 2.0;
        let args = HypergeometricArgs::new(
            al - z2,
            be - z2,
            Complex64::new(1.0 + self.params.mu, 0.0),
            h.z,
        );
        let near_series =
            h.z <= SERIES_THRESHOLD && self.zeta.norm() * h.tanh <= L_SERIES_GROWTH_LIMIT;
        let degenerate = integer_gap(args.a, args.b, args.c).is_some();
        if near_series || degenerate || self.connection.is_none() {
            // For integer zeta the connection coefficients have poles; the
            // hypergeometric routine then takes its logarithmic branch.
            let f = gauss_2f1_complement(args, h.w)?;
            return Ok(self.log_prefactor(&h, 1.0).exp() * f);
        }
        let cc = self.connection.expect("checked above");
        let (lm, fm) = self.m_parts(&h)?;
        let (ln, fnn) = self.n_parts(&h)?;
        Ok(exp_times(lm, cc.c_m, fm) + exp_times(ln, cc.c_n, fnn))
    }

    pub fn eval(&self, which: Which, x: f64) -> Result<SolutionValue> {
        let value = match which {
            Which::L => self.l(x)?,
            Which::M => self.m(x)?,
            Which::N => self.n(x)?,
        };
        Ok(SolutionValue {
            value,
            which,
            x,
            point: self.point,
        })
    }
}

/// c exp(l) f, with c folded into the exponent so that a huge exp(l) times a
/// tiny c does not overflow.
fn exp_times(l: Complex64, c: Complex64, f: Complex64) -> Complex64 {
    if c == Complex64::new(0.0, 0.0) {
        return c;
    }
    (l + c.ln()).exp() * f
}

fn connection_coefficients_raw(
    params: &ModelParams,
    zeta: Complex64,
) -> Result<ConnectionCoefficients> {
    let (al, be, mu) = (params.alpha(), params.beta(), params.mu);
    let z2 = zeta / 2.0;
    let one = Complex64::new(1.0, 0.0);
    let c_m = gamma_ratio(&[one + mu, -zeta], &[al - z2, be - z2])?;
    let c_n = gamma_ratio(&[one + mu, zeta], &[al + z2, be + z2])?;
    Ok(ConnectionCoefficients { c_m, c_n })
}

fn wronskian_at(params: &ModelParams, zeta: Complex64) -> Result<Complex64> {
    let z2 = zeta / 2.0;
    let one = Complex64::new(1.0, 0.0);
    if is_nonpositive_integer(one + zeta) {
        return Err(Error::Pole {
            re: 1.0 + zeta.re,
            im: zeta.im,
        });
    }
    Ok(-2.0
        * gamma_ratio(
            &[one + params.mu, one + zeta],
            &[params.alpha() + z2, params.beta() + z2],
        )?)
}

pub fn eval_l(params: &ModelParams, x: f64, pt: SpectralPoint) -> Result<Complex64> {
    Solutions::new(params, pt)?.l(x)
}

pub fn eval_m(params: &ModelParams, x: f64, pt: SpectralPoint) -> Result<Complex64> {
    Solutions::new(params, pt)?.m(x)
}

pub fn eval_n(params: &ModelParams, x: f64, pt: SpectralPoint) -> Result<Complex64> {
    Solutions::new(params, pt)?.n(x)
}

/// W(zeta) = -2 Gamma(1+mu) Gamma(1+zeta) / (Gamma(alpha+zeta/2) Gamma(beta+zeta/2)),
/// exactly zero where beta + zeta/2 is a nonpositive integer.
pub fn wronskian(params: &ModelParams, pt: SpectralPoint) -> Result<Complex64> {
    wronskian_at(params, pt.zeta())
}

/// The Wronskian for real zeta > 0, continuous through its zeros.
pub fn wronskian_real(params: &ModelParams, zeta: f64) -> f64 {
    wronskian_at(params, Complex64::new(zeta, 0.0))
        .map(|w| w.re)
        .unwrap_or(f64::NAN)
}

/// Coefficients with L = c_M M + c_N N. Errors when zeta is an integer.
pub fn connection_coefficients(
    params: &ModelParams,
    pt: SpectralPoint,
) -> Result<ConnectionCoefficients> {
    connection_coefficients_raw(params, pt.zeta())
}
