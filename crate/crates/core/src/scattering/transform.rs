//! Quadrature realizations of the generalized Fourier transforms, the sine
//! transform and the wave operators.

use num_complex::Complex64;
use rayon::prelude::*;

use super::FourierKernel;
use crate::error::Result;
use crate::model::ModelParams;
use crate::quadrature::Rule;
use crate::solutions::Side;

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;
/// Relative size of the tail indicator above which a warning is attached.
pub const WARNING_LEVEL: f64 = 1e-4;
/// Fraction of a grid, at its far end, whose mass serves as the truncation
/// indicator.
const TAIL_FRACTION: f64 = 0.05;

/// Values of a function at quadrature nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub grid: Vec<f64>,
    pub values: Vec<Complex64>,
    pub weights: Vec<f64>,
}

impl SampledFunction {
    pub fn from_rule<F: Fn(f64) -> Complex64>(rule: &Rule, f: F) -> Self {
        SampledFunction {
            grid: rule.nodes.clone(),
            values: rule.nodes.iter().map(|&x| f(x)).collect(),
            weights: rule.weights.clone(),
        }
    }

    pub fn zeros(rule: &Rule) -> Self {
        Self::from_rule(rule, |_| Complex64::new(0.0, 0.0))
    }

    pub fn rule(&self) -> Rule {
        Rule {
            nodes: self.grid.clone(),
            weights: self.weights.clone(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// <self, other> = sum w conj(self) other, over a shared grid.
    pub fn inner(&self, other: &SampledFunction) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .zip(&self.weights)
            .map(|((a, b), w)| w * a.conj() * b)
            .sum()
    }

    pub fn sub(&self, other: &SampledFunction) -> SampledFunction {
        let mut out = self.clone();
        for (v, o) in out.values.iter_mut().zip(&other.values) {
            *v -= o;
        }
        out
    }

    /// Norm over the outermost part of the grid.
    fn tail_norm(&self) -> f64 {
        let (Some(&a), Some(&b)) = (self.grid.first(), self.grid.last()) else {
            return 0.0;
        };
        let cut = b - TAIL_FRACTION * (b - a);
        self.grid
            .iter()
            .zip(&self.values)
            .zip(&self.weights)
            .filter(|((x, _), _)| **x >= cut)
            .map(|((_, v), w)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureWarning {
    /// Estimated truncation error relative to the input norm.
    pub relative_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transformed {
    pub function: SampledFunction,
    pub warning: Option<QuadratureWarning>,
}

fn warning_for(input: &SampledFunction, output: &SampledFunction) -> Option<QuadratureWarning> {
    let base = input.norm();
    if base == 0.0 {
        return None;
    }
    let estimate = input.tail_norm().max(output.tail_norm()) / base;
    (estimate > WARNING_LEVEL).then_some(QuadratureWarning {
        relative_estimate: estimate,
    })
}

/// F^-(x_i, k_j) on a product of x and k rules, stored row-major in x.
/// F^+ is its conjugate.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub x: Rule,
    pub k: Rule,
    minus: Vec<Complex64>,
}

impl KernelMatrix {
    pub fn build(params: &ModelParams, x: &Rule, k: &Rule) -> Result<Self> {
        let kernels: Vec<FourierKernel> = k
            .nodes
            .par_iter()
            .map(|&kv| FourierKernel::new(params, kv))
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<Complex64>> = x
            .nodes
            .par_iter()
            .map(|&xv| {
                kernels
                    .iter()
                    .map(|fk| fk.eval(Side::Minus, xv))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(KernelMatrix {
            x: x.clone(),
            k: k.clone(),
            minus: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, side: Side, i: usize, j: usize) -> Complex64 {
        let v = self.minus[i * self.k.len() + j];
        match side {
            Side::Minus => v,
            Side::Plus => v.conj(),
        }
    }

    /// (F^{+/-} f)(k_j) = sum_i w_i F^{-/+}(x_i, k_j) f(x_i); f lives on the x rule.
    pub fn forward(&self, side: Side, f: &SampledFunction) -> Transformed {
        let kernel_side = side.flip();
        let values: Vec<Complex64> = (0..self.k.len())
            .into_par_iter()
            .map(|j| {
                (0..self.x.len())
                    .map(|i| self.x.weights[i] * self.get(kernel_side, i, j) * f.values[i])
                    .sum()
            })
            .collect();
        let function = SampledFunction {
            grid: self.k.nodes.clone(),
            values,
            weights: self.k.weights.clone(),
        };
        let warning = warning_for(f, &function);
        Transformed { function, warning }
    }

    /// ((F^{+/-})* g)(x_i) = sum_j w_j F^{+/-}(x_i, k_j) g(k_j); g lives on the k rule.
    pub fn adjoint(&self, side: Side, g: &SampledFunction) -> Transformed {
        let values: Vec<Complex64> = (0..self.x.len())
            .into_par_iter()
            .map(|i| {
                (0..self.k.len())
                    .map(|j| self.k.weights[j] * self.get(side, i, j) * g.values[j])
                    .sum()
            })
            .collect();
        let function = SampledFunction {
            grid: self.x.nodes.clone(),
            values,
            weights: self.x.weights.clone(),
        };
        let warning = warning_for(g, &function);
        Transformed { function, warning }
    }
}

/// (F^{+/-} f)(k) = integral of F^{-/+}(x, k) f(x) dx at the nodes of `k`.
pub fn forward_transform(
    params: &ModelParams,
    side: Side,
    f: &SampledFunction,
    k: &Rule,
) -> Result<Transformed> {
    Ok(KernelMatrix::build(params, &f.rule(), k)?.forward(side, f))
}

/// ((F^{+/-})* g)(x) = integral of F^{+/-}(x, k) g(k) dk at the nodes of `x`.
pub fn adjoint_transform(
    params: &ModelParams,
    side: Side,
    g: &SampledFunction,
    x: &Rule,
) -> Result<Transformed> {
    Ok(KernelMatrix::build(params, x, &g.rule())?.adjoint(side, g))
}

/// Dirichlet sine transform sqrt(2/pi) integral of sin(kx) f(x) dx, evaluated
/// at the nodes of `target`. It is its own inverse.
pub fn sine_transform(f: &SampledFunction, target: &Rule) -> SampledFunction {
    let values = target
        .nodes
        .par_iter()
        .map(|&k| {
            f.grid
                .iter()
                .zip(&f.values)
                .zip(&f.weights)
                .map(|((&x, &v), &w)| w * (k * x).sin() * v)
                .sum::<Complex64>()
                * SQRT_2_OVER_PI
        })
        .collect();
    SampledFunction {
        grid: target.nodes.clone(),
        values,
        weights: target.weights.clone(),
    }
}

/// W_{+/-} f = (F^{+/-})* F_D f, returned on the grid of f.
pub fn wave_operator_apply(
    params: &ModelParams,
    side: Side,
    f: &SampledFunction,
    k: &Rule,
) -> Result<Transformed> {
    let matrix = KernelMatrix::build(params, &f.rule(), k)?;
    Ok(wave_operator_with(&matrix, side, f))
}

pub fn wave_operator_with(matrix: &KernelMatrix, side: Side, f: &SampledFunction) -> Transformed {
    let fd = sine_transform(f, &matrix.k);
    let mut out = matrix.adjoint(side, &fd);
    if out.warning.is_none() {
        out.warning = warning_for(f, &fd);
    }
    out
}
