//! Gauss-Legendre rules, composite panels and adaptive Gauss-Kronrod.

use std::f64::consts::PI;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// A quadrature rule given by nodes and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Composite rule on [a, b]: panels of (at most) `width` with an
    /// `order`-point Gauss-Legendre rule on each.
    pub fn panels(a: f64, b: f64, width: f64, order: usize) -> Rule {
        let count = ((b - a) / width).ceil().max(1.0) as usize;
        let h = (b - a) / count as f64;
        let (gx, gw) = gauss_legendre(order);
        let mut nodes = Vec::with_capacity(count * order);
        let mut weights = Vec::with_capacity(count * order);
        for p in 0..count {
            let lo = a + p as f64 * h;
            for (x, w) in gx.iter().zip(&gw) {
                nodes.push(lo + 0.5 * h * (x + 1.0));
                weights.push(0.5 * h * w);
            }
        }
        Rule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const GAUSS7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = KRONROD_WEIGHTS[7] * fc;
    let mut gauss = GAUSS7_WEIGHTS[3] * fc;
    for j in 0..7 {
        let dx = h * KRONROD_NODES[j];
        let s = f(c - dx) + f(c + dx);
        kron += KRONROD_WEIGHTS[j] * s;
        if j % 2 == 1 {
            gauss += GAUSS7_WEIGHTS[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to relative
/// tolerance `rel`. Returns the estimate and its error bound.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel: f64) -> (f64, f64) {
    let mut parts = vec![(a, b, gk15(&f, a, b))];
    for _ in 0..2000 {
        let total: f64 = parts.iter().map(|p| p.2 .0).sum();
        let err: f64 = parts.iter().map(|p| p.2 .1).sum();
        if err <= rel * total.abs() || err < 1e-300 {
            return (total, err);
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .expect("nonempty");
        let (lo, hi, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        parts.push((lo, mid, gk15(&f, lo, mid)));
        parts.push((mid, hi, gk15(&f, mid, hi)));
    }
    let total: f64 = parts.iter().map(|p| p.2 .0).sum();
    let err: f64 = parts.iter().map(|p| p.2 .1).sum();
    (total, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let (x, w) = gauss_legendre(32);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(62)).sum();
        assert!((m - 2.0 / 63.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn panels_integrate_smooth_function() {
        let r = Rule::panels(0.0, 30.0, 1.0, 32);
        assert_eq!(r.len(), 960);
        let v = r.integrate(|x| (-x).exp() * x.sin());
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let (v, _) = adaptive(|x| 1.0 / (1e-4 + (x - 0.3).powi(2)), 0.0, 1.0, 1e-10);
        let want = 100.0 * ((0.7f64 / 1e-2).atan() + (0.3f64 / 1e-2).atan());
        assert!((v - want).abs() < 1e-8 * want);
    }
}
