//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use sl2radial::checks::{
    bound_counts, linspace, regular_discrepancy, sigma_discrepancy, wronskian_discrepancy,
};
use sl2radial::index::{
    verify_index_with, winding_contributions, winding_numeric, winding_numeric_parts,
};
use sl2radial::model::{classify_beta, BetaClass, ModelParams};
use sl2radial::quadrature::Rule;
use sl2radial::scattering::{
    bessel_limit, dilation_scaled_kernel, fourier_kernel, plane_wave_limit, sigma, sine_transform,
    KernelMatrix, SampledFunction,
};
use sl2radial::solutions::{Side, SpectralPoint};
use sl2radial::spectral::{
    bound_state_count, bound_states, eigenfunction, eigenvalue_search, resolvent_boundary_kernel,
    resolvent_kernel, spectral_density_kernel, wronskian_roots,
};
use sl2radial::specfun::bessel_script_j;
use sl2radial::Result;

type Outcome = Result<(bool, String)>;

fn params(mu: f64, nu: f64) -> ModelParams {
    ModelParams::new(mu, nu).expect("valid parameters")
}

fn criterion_1() -> Outcome {
    let p = params(0.5, 0.5);
    let mut sig: f64 = 0.0;
    for k in linspace(0.01, 50.0, 500) {
        sig = sig.max((sigma(&p, k)? - 1.0).norm());
    }
    let mut kern: f64 = 0.0;
    for x in linspace(0.01, 10.0, 60) {
        for k in linspace(0.1, 5.0, 60) {
            let exact = (2.0 / PI).sqrt() * (k * x).sin();
            kern = kern.max((fourier_kernel(&p, Side::Minus, x, k)? - exact).norm());
        }
    }
    let w = winding_numeric(&p, 200.0, 50.0)?;
    let count = bound_state_count(&p);
    let ok = sig < 1e-12 && kern < 1e-10 && w.abs() < 1e-6 && count == 0;
    Ok((
        ok,
        format!("|sigma-1| {sig:.2e}, kernel sup error {kern:.2e}, winding {w:.2e}, count {count}"),
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let xs = linspace(0.1, 6.0, 120);
    let mut worst: f64 = 0.0;
    for (mu, nu, zeta) in [
        (0.0, 3.0, Complex64::new(2.0, 1.0)),
        (1.0, 1.0, Complex64::new(1.0, 0.0)),
        (2.0, 0.0, Complex64::new(0.5, 2.0)),
    ] {
        worst = worst.max(regular_discrepancy(&params(mu, nu), zeta, &xs, 1e-12)?);
    }
    let secs = start.elapsed().as_secs_f64();
    Ok((
        worst < 1e-7 && secs < 10.0,
        format!("max relative error {worst:.2e}, {secs:.2} s"),
    ))
}

const STANDARD_SET: [(f64, f64); 8] = [
    (0.0, 0.0),
    (0.0, 3.0),
    (0.0, 2.5),
    (1.0, 1.0),
    (1.0, 4.0),
    (2.0, 0.0),
    (0.5, 0.5),
    (3.0, 0.5),
];

fn criterion_3() -> Outcome {
    let xs = [0.5, 1.0, 2.0, 4.0];
    let (mut spread, mut closed): (f64, f64) = (0.0, 0.0);
    for (mu, nu) in STANDARD_SET {
        for zeta in [Complex64::new(1.5, 0.5), Complex64::new(0.7, 1.3)] {
            let w = wronskian_discrepancy(&params(mu, nu), zeta, &xs, 1e-12)?;
            spread = spread.max(w.spread);
            closed = closed.max(w.closed_error);
        }
    }
    let roots = wronskian_roots(&params(0.0, 3.0), 1.5, 2.5, 1e-11);
    let root_err = roots
        .iter()
        .map(|r| (r - 2.0).abs())
        .fold(f64::INFINITY, f64::min);
    Ok((
        spread < 1e-8 && closed < 1e-7 && roots.len() == 1 && root_err < 1e-10,
        format!("spread {spread:.2e}, closed-form error {closed:.2e}, root at 2 to {root_err:.2e}"),
    ))
}

fn criterion_4() -> Outcome {
    let mut phase: f64 = 0.0;
    for (mu, nu) in [(0.0, 3.0), (1.0, 2.0), (2.0, 0.5)] {
        phase = phase.max(sigma_discrepancy(&params(mu, nu), &[0.5, 1.0, 2.0, 5.0])?);
    }
    let mut modulus: f64 = 0.0;
    for mu in linspace(0.0, 3.0, 7) {
        for nu in linspace(0.0, 6.0, 13) {
            let p = params(mu, nu);
            for k in linspace(0.01, 100.0, 100) {
                modulus = modulus.max((sigma(&p, k)?.norm() - 1.0).abs());
            }
        }
    }
    Ok((
        phase < 1e-6 && modulus < 1e-12,
        format!("phase mismatch {phase:.2e} rad, ||sigma|-1| {modulus:.2e}"),
    ))
}

fn criterion_5() -> Outcome {
    let sets = [(0.0, 3.0), (1.0, 1.0), (2.0, 0.5), (0.5, 0.5), (1.5, 4.2)];
    let pts = [(0.5, 1.0), (1.0, 2.5), (2.0, 2.0), (3.0, 0.7)];
    let (mut prod, mut jump, mut limit): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let eps = 1e-6;
    for (mu, nu) in sets {
        let p = params(mu, nu);
        for k in [0.3, 1.0, 2.0, 4.5] {
            for (x, y) in pts {
                let dens = spectral_density_kernel(&p, k, x, y)?;
                let scale = dens.norm().max(1.0);
                let fm = fourier_kernel(&p, Side::Minus, x, k)?;
                let fp = fourier_kernel(&p, Side::Plus, y, k)?;
                prod = prod.max((2.0 * k * dens - fm * fp).norm() / scale);
                let rp = resolvent_boundary_kernel(&p, k, Side::Plus, x, y)?;
                let rm = resolvent_boundary_kernel(&p, k, Side::Minus, x, y)?;
                let j = (rp - rm) / Complex64::new(0.0, 2.0 * PI);
                jump = jump.max((j - dens).norm() / scale);
                for (side, r) in [(Side::Plus, rp), (Side::Minus, rm)] {
                    let zeta = Complex64::new(eps, -side.sign() * k);
                    let inner = resolvent_kernel(&p, SpectralPoint::interior(zeta)?, x, y)?;
                    limit = limit.max((inner - r).norm() / r.norm().max(1.0));
                }
            }
        }
    }
    Ok((
        prod < 1e-10 && jump < 1e-10 && limit < 1e-4,
        format!("2kp vs F-F+ {prod:.2e}, jump {jump:.2e}, eps-interior {limit:.2e}"),
    ))
}

fn criterion_6() -> Outcome {
    let mut mismatches = Vec::new();
    let mut level_err: f64 = 0.0;
    let mut checked = 0;
    for i in 0..7 {
        for j in 0..13 {
            let (mu, nu) = (0.5 * i as f64, 0.5 * j as f64);
            let p = params(mu, nu);
            let c = bound_counts(&p)?;
            if !c.agree() {
                mismatches.push(format!("({mu},{nu}): {c:?}"));
            }
            let roots = eigenvalue_search(&p);
            for (r, l) in roots.iter().zip(&bound_states(&p).levels) {
                let expected = -(nu - mu - 1.0 - 2.0 * l.n as f64).powi(2);
                level_err = level_err.max((-r * r - expected).abs());
                level_err = level_err.max((l.energy - expected).abs());
            }
            checked += 1;
        }
    }
    Ok((
        mismatches.is_empty() && level_err < 1e-10,
        format!(
            "{checked} pairs, {} count mismatches {:?}, level error {level_err:.2e}",
            mismatches.len(),
            mismatches
        ),
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut pairs = Vec::new();
    for mu in [0.0, 0.5, 1.0, 2.0, 3.0] {
        for nu in [0.0, 0.5, 1.0, 2.0, 2.5, 3.0, 4.0, 5.0, 6.3] {
            pairs.push((mu, nu));
        }
    }
    let mut classes = [0usize; 3];
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut edge: f64 = 0.0;
    for &(mu, nu) in &pairs {
        let p = params(mu, nu);
        classes[match classify_beta(&p) {
            BetaClass::Positive => 0,
            BetaClass::NegativeInteger { .. } => 1,
            BetaClass::NegativeNoninteger { .. } => 2,
        }] += 1;
        let r = verify_index_with(&p, 200.0, 50.0)?;
        let parts = winding_numeric_parts(&p, 200.0, 50.0)?;
        for (a, b) in parts.iter().zip(&r.omega) {
            edge = edge.max((a - b).abs());
        }
        worst = worst.max((r.winding_numeric - r.winding_numeric.round()).abs());
        let closed_exact = r.winding_closed == r.winding_closed.round();
        if !(r.pass && closed_exact) {
            failures.push(format!("({mu},{nu})"));
        }
    }
    let worked = winding_contributions(&params(0.0, 3.0)) == [-0.5, 1.25, 0.25, 0.0]
        && winding_contributions(&params(2.0, 0.0)) == [0.0, 0.75, -0.75, 0.0];
    let secs = start.elapsed().as_secs_f64();
    let spans = classes.iter().all(|&c| c > 0);
    Ok((
        failures.is_empty() && worked && spans && pairs.len() >= 30 && secs < 60.0,
        format!(
            "{} pairs (classes +/int/nonint = {classes:?}), failures {failures:?}, \
             numeric off-integer {worst:.2e}, per-edge omega error {edge:.2e}, \
             worked values {worked}, {secs:.2} s",
            pairs.len()
        ),
    ))
}

fn criterion_8() -> Outcome {
    let mut small: f64 = 0.0;
    let mut large: f64 = 0.0;
    for mu in [0.0, 1.0, 2.0] {
        // nu = 1/2 and 3 give beta > 0, beta = 0, beta = -1 and beta = -1/2
        for nu in [0.5, 3.0] {
            let p = params(mu, nu);
            for x in [0.5, 1.0, 2.0] {
                for k in [0.5, 1.0, 2.0] {
                    let j = bessel_script_j(mu, x * k).abs();
                    let d = (dilation_scaled_kernel(&p, 1e-3, x, k)? - bessel_limit(&p, x, k))
                        .norm();
                    small = small.max(d / (1e-2 * j + 1e-4));
                    let d = (dilation_scaled_kernel(&p, 1e3, x, k)? - plane_wave_limit(&p, x, k))
                        .norm();
                    large = large.max(d);
                }
            }
        }
    }
    Ok((
        small < 1.0 && large < 1e-2,
        format!("eps=1e-3 error/bound {small:.2e}, eps=1e3 error {large:.2e}"),
    ))
}

fn bump(x: f64) -> Complex64 {
    let t = x - 2.0;
    let v = if t.abs() < 1.0 {
        (-1.0 / (1.0 - t * t)).exp()
    } else {
        0.0
    };
    Complex64::new(v, 0.0)
}

fn criterion_9() -> Outcome {
    let xr = Rule::panels(0.0, 30.0, 1.0, 32);
    let kr = Rule::panels(0.0, 40.0, 1.0, 32);
    let f = SampledFunction::from_rule(&xr, bump);
    let fnorm = f.norm();
    let (mut round, mut s_err): (f64, f64) = (0.0, 0.0);
    for (mu, nu) in [(0.0, 3.0), (1.0, 1.0)] {
        let p = params(mu, nu);
        let m = KernelMatrix::build(&p, &xr, &kr)?;
        let back = m.adjoint(Side::Minus, &m.forward(Side::Minus, &f).function).function;
        let mut target = f.clone();
        for n in 0..bound_state_count(&p) {
            let phi = eigenfunction(&p, n)?.normalized()?;
            let g = SampledFunction::from_rule(&xr, |x| Complex64::new(phi.eval(x).unwrap(), 0.0));
            let c = g.inner(&f);
            for (t, gv) in target.values.iter_mut().zip(&g.values) {
                *t -= c * gv;
            }
        }
        round = round.max(back.sub(&target).norm() / fnorm);

        let fd = sine_transform(&f, &kr);
        let w_minus = m.adjoint(Side::Minus, &fd).function;
        let w_plus_adj = sine_transform(&m.forward(Side::Plus, &w_minus).function, &xr);
        let lhs = sine_transform(&w_plus_adj, &kr);
        let mut rhs = fd.clone();
        for (v, &k) in rhs.values.iter_mut().zip(&kr.nodes) {
            *v *= sigma(&p, k)?;
        }
        s_err = s_err.max(lhs.sub(&rhs).norm() / fnorm);
    }
    Ok((
        round < 1e-2 && s_err < 1e-2,
        format!("round trip {round:.2e}, S identity {s_err:.2e}"),
    ))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut all = true;
    for (n, run) in criteria {
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        all &= ok;
        println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
