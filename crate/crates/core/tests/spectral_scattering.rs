use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use sl2radial::checks::green_discrepancy;
use sl2radial::model::ModelParams;
use sl2radial::quadrature::{adaptive, Rule};
use sl2radial::scattering::{
    bessel_limit, dilation_scaled_kernel, fourier_kernel, fourier_kernel_large_x,
    fourier_kernel_small_x, plane_wave_limit, sigma, sigma_at_infinity, sigma_at_zero,
    sigma_samples, wave_operator_apply, SampledFunction,
};
use sl2radial::solutions::{Side, SpectralPoint};
use sl2radial::specfun::bessel_script_j;
use sl2radial::spectral::{
    bound_states, eigenfunction, resolvent_boundary_kernel, resolvent_kernel,
    spectral_density_kernel,
};
use sl2radial::Error;

fn params(mu: f64, nu: f64) -> ModelParams {
    ModelParams::new(mu, nu).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_is_unimodular(mu in 0.0f64..4.0, nu in 0.0f64..8.0, k in 1e-4f64..500.0) {
        let s = sigma(&params(mu, nu), k).unwrap();
        prop_assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_is_real_symmetric_and_nonnegative_on_diagonal(
        mu in 0.0f64..3.0, nu in 0.0f64..5.0, k in 0.05f64..6.0, x in 0.05f64..5.0, y in 0.05f64..5.0,
    ) {
        let p = params(mu, nu);
        let a = spectral_density_kernel(&p, k, x, y).unwrap();
        let b = spectral_density_kernel(&p, k, y, x).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
        prop_assert!(a.im.abs() <= 1e-10 * a.norm().max(1e-300));
        prop_assert!(spectral_density_kernel(&p, k, x, x).unwrap().re >= 0.0);
    }

    #[test]
    fn boundary_kernels_are_conjugate(
        mu in 0.0f64..3.0, nu in 0.0f64..5.0, k in 0.05f64..6.0, x in 0.05f64..5.0, y in 0.05f64..5.0,
    ) {
        let p = params(mu, nu);
        let rp = resolvent_boundary_kernel(&p, k, Side::Plus, x, y).unwrap();
        let rm = resolvent_boundary_kernel(&p, k, Side::Minus, x, y).unwrap();
        prop_assert!((rp - rm.conj()).norm() <= 1e-12 * rp.norm().max(1e-300));
    }

    #[test]
    fn fourier_kernels_are_conjugate(mu in 0.0f64..3.0, nu in 0.0f64..5.0, k in 0.05f64..6.0, x in 0.05f64..8.0) {
        let p = params(mu, nu);
        let a = fourier_kernel(&p, Side::Minus, x, k).unwrap();
        let b = fourier_kernel(&p, Side::Plus, x, k).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-11 * a.norm().max(1e-3));
    }
}

#[test]
fn resolvent_matches_oracle_green_function() {
    for (mu, nu) in [(0.0, 3.0), (1.0, 1.0), (2.0, 0.5), (0.5, 4.4)] {
        let d = green_discrepancy(
            &params(mu, nu),
            Complex64::new(0.9, 0.7),
            &[(0.3, 0.8), (1.0, 3.0), (2.5, 2.5)],
        )
        .unwrap();
        assert!(d < 1e-7, "({mu}, {nu}): {d:e}");
    }
}

#[test]
fn resolvent_has_a_pole_at_the_bound_state() {
    let p = params(0.0, 3.0);
    let (x, y) = (0.7, 1.4);
    let phi = eigenfunction(&p, 0).unwrap().normalized().unwrap();
    let residue = phi.eval(x).unwrap() * phi.eval(y).unwrap();
    // R(E) ~ residue / (E_0 - E) with E_0 = -4 near E = -zeta^2
    let d = 1e-5;
    let zeta = 2.0 + d;
    let r = resolvent_kernel(&p, SpectralPoint::Interior(Complex64::new(zeta, 0.0)), x, y).unwrap();
    let e = -zeta * zeta;
    assert!(((r * (-4.0 - e)).re / residue - 1.0).abs() < 1e-3);
}

#[test]
fn eigenfunctions_are_orthonormal() {
    let p = params(0.0, 6.0);
    let n = bound_states(&p).count;
    assert_eq!(n, 3);
    let fs: Vec<_> = (0..n)
        .map(|i| eigenfunction(&p, i).unwrap().normalized().unwrap())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let (g, _) = adaptive(
                |x| fs[i].eval(x).unwrap() * fs[j].eval(x).unwrap(),
                1e-12,
                30.0,
                1e-10,
            );
            let e = if i == j { 1.0 } else { 0.0 };
            assert!((g - e).abs() < 1e-7, "<{i},{j}> = {g}");
        }
    }
}

#[test]
fn sigma_endpoint_values() {
    assert_eq!(sigma_at_zero(&params(0.0, 3.0)), -1.0);
    assert_eq!(sigma_at_zero(&params(2.0, 0.0)), 1.0);
    let p = params(0.0, 2.5);
    assert_eq!(sigma_at_zero(&p), 1.0);
    assert!(sigma(&p, 1e-4).unwrap().arg().abs() < 1e-2);
    let s = sigma_at_infinity(&params(1.0, 0.3));
    assert!((s - Complex64::new(0.0, -PI / 2.0).exp()).norm() < 1e-15);
}

#[test]
fn unwrapped_sigma_phase_is_continuous_and_anchored() {
    let p = params(0.0, 3.0);
    let ks: Vec<f64> = (1..=400).map(|i| 0.05 * i as f64).collect();
    let s = sigma_samples(&p, &ks).unwrap();
    assert!((s[0].phase - PI).abs() < 0.2);
    for w in s.windows(2) {
        assert!((w[1].phase - w[0].phase).abs() < 0.5);
    }
    for row in &s {
        let v = Complex64::new(0.0, row.phase).exp();
        assert!((v - Complex64::new(row.sigma[0], row.sigma[1])).norm() < 1e-12);
    }
    assert!(matches!(sigma_samples(&p, &[1.0, 0.5]), Err(Error::Domain(_))));
}

#[test]
fn kernel_asymptotics_in_x() {
    for (mu, nu) in [(0.0, 3.0), (1.5, 0.5), (2.0, 4.0)] {
        let p = params(mu, nu);
        for k in [0.5, 2.0] {
            let far = fourier_kernel(&p, Side::Minus, 20.0, k).unwrap();
            let form = fourier_kernel_large_x(&p, 20.0, k).unwrap();
            assert!((far - form).norm() < 1e-8, "large x ({mu},{nu},{k})");
            let x = 1e-4;
            let near = fourier_kernel(&p, Side::Minus, x, k).unwrap();
            let form = fourier_kernel_small_x(&p, x, k).unwrap();
            assert!((near / form - 1.0).norm() < 1e-6, "small x ({mu},{nu},{k})");
        }
    }
}

// The approach to the Bessel limit is linear in eps with a coefficient
// proportional to c = alpha(alpha-1) + beta(beta-1) + 1/4.
#[test]
fn bessel_limit_error_law() {
    for (mu, nu) in [(2.0, 5.0), (1.0, 4.0), (0.0, 3.0), (2.0, 0.0), (3.0, 1.5)] {
        let p = params(mu, nu);
        let (a, b) = (p.alpha(), p.beta());
        let c = a * (a - 1.0) + b * (b - 1.0) + 0.25;
        for (x, k) in [(2.0, 0.5), (1.0, 1.0), (0.5, 2.0)] {
            let j = bessel_script_j(mu, x * k).abs();
            let law = |eps: f64| {
                let d = dilation_scaled_kernel(&p, eps, x, k).unwrap() - bessel_limit(&p, x, k);
                d.norm() / j * k / (eps * c)
            };
            let (r3, r4) = (law(1e-3), law(1e-4));
            assert!((r3 / r4 - 1.0).abs() < 2e-3, "({mu},{nu}) {r3} {r4}");
            assert!((r4 - (2.0 / PI).sqrt()).abs() < 2e-3, "({mu},{nu}) {r4}");
        }
    }
}

#[test]
fn plane_wave_limit_free_and_bound() {
    let free = params(0.5, 0.5);
    for eps in [1e-3, 1.0, 1e3] {
        let v = dilation_scaled_kernel(&free, eps, 1.0, 1.0).unwrap();
        assert!((v - plane_wave_limit(&free, 1.0, 1.0)).norm() < 1e-12);
    }
    let p = params(0.0, 3.0);
    let far = dilation_scaled_kernel(&p, 1e4, 1.0, 1.0).unwrap();
    let expected = Complex64::new(0.0, 2.0 * 1f64.cos() / (2.0 * PI).sqrt());
    assert!((far - expected).norm() < 2e-3);
}

#[test]
fn wave_operator_is_isometric_without_bound_states() {
    let p = params(1.0, 1.0);
    let xr = Rule::panels(0.0, 20.0, 1.0, 24);
    let kr = Rule::panels(0.0, 40.0, 1.0, 24);
    let f = SampledFunction::from_rule(&xr, |x| {
        Complex64::new((-(x - 4.0) * (x - 4.0)).exp() * x, 0.0)
    });
    let w = wave_operator_apply(&p, Side::Minus, &f, &kr).unwrap();
    assert!((w.function.norm() / f.norm() - 1.0).abs() < 1e-3);
}
