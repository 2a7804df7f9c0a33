//! Continuous phase of a unit-modulus function along a real path.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest accepted phase change between adjacent samples.
pub const MAX_PHASE_STEP: f64 = PI / 4.0;

/// Map an angle into (-pi, pi].
pub fn wrap(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// The phase of `v` on the 2 pi branch closest to `reference`.
pub fn nearest_branch(v: Complex64, reference: f64) -> f64 {
    reference + wrap(v.arg() - reference)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub t: f64,
    pub value: Complex64,
    pub phase: f64,
}

/// Unwrapped phase of `f` at each point of `grid` (monotone). The first
/// phase is taken on the branch nearest `anchor`. Between grid points the
/// path is bisected until every step is below `MAX_PHASE_STEP`.
pub fn unwrap_path<F>(f: F, grid: &[f64], anchor: f64) -> Result<Vec<PhaseSample>>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let mut out = Vec::with_capacity(grid.len());
    let Some(&t0) = grid.first() else {
        return Ok(out);
    };
    let v0 = f(t0)?;
    let mut prev = PhaseSample {
        t: t0,
        value: v0,
        phase: nearest_branch(v0, anchor),
    };
    out.push(prev);
    for &t in &grid[1..] {
        let v = f(t)?;
        let phase = refine(&f, prev.t, prev.phase, t, v, 0)?;
        prev = PhaseSample { t, value: v, phase };
        out.push(prev);
    }
    Ok(out)
}

fn refine<F>(f: &F, ta: f64, pa: f64, tb: f64, vb: Complex64, depth: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let step = wrap(vb.arg() - pa);
    if step.abs() < MAX_PHASE_STEP {
        return Ok(pa + step);
    }
    if depth > 60 || (tb - ta).abs() <= 1e-13 * ta.abs().max(tb.abs()).max(1.0) {
        return Err(Error::Unwrap { at: ta, step });
    }
    let tm = 0.5 * (ta + tb);
    let vm = f(tm)?;
    let pm = refine(f, ta, pa, tm, vm, depth + 1)?;
    refine(f, tm, pm, tb, vb, depth + 1)
}

/// Total phase change of `f` along [t0, t1] sampled at `n` (>= 2) base
/// points, with adaptive refinement in between.
pub fn phase_change<F>(f: F, t0: f64, t1: f64, n: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let grid: Vec<f64> = (0..n)
        .map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64)
        .collect();
    let s = unwrap_path(f, &grid, 0.0)?;
    Ok(s[s.len() - 1].phase - s[0].phase)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_range() {
        assert_eq!(wrap(PI), PI);
        assert!((wrap(-PI) - PI).abs() < 1e-15);
        assert!((wrap(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap(0.3), 0.3);
    }

    #[test]
    fn unwraps_fast_rotation() {
        // e^{i 40 t} on [0, 1] with only 3 base points
        let f = |t: f64| Ok(Complex64::new(0.0, 40.0 * t).exp());
        let d = phase_change(f, 0.0, 1.0, 3).unwrap();
        assert!((d - 40.0).abs() < 1e-12);
    }

    #[test]
    fn anchor_selects_branch() {
        let f = |_t: f64| Ok(Complex64::new(-1.0, -1e-9));
        let s = unwrap_path(f, &[0.0, 1.0], PI).unwrap();
        assert!((s[0].phase - (PI + 1e-9)).abs() < 1e-12);
    }

    #[test]
    fn discontinuity_is_reported() {
        let f = |t: f64| {
            Ok(if t < 0.5 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            })
        };
        assert!(matches!(
            phase_change(f, 0.0, 1.0, 2),
            Err(Error::Unwrap { .. })
        ));
    }
}
