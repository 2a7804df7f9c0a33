use num_complex::Complex64;
use proptest::prelude::*;
use sl2radial::specfun::branches::{series, transformed};
use sl2radial::specfun::{
    beta_fn, digamma, gamma, gauss_2f1, log_gamma, pochhammer, rgamma, HypergeometricArgs,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_recurrence(re in -4.5f64..6.0, im in -6.0f64..6.0) {
        let z = c(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn log_gamma_conjugate_symmetry(re in 0.05f64..20.0, im in -30.0f64..30.0) {
        let z = c(re, im);
        let a = log_gamma(z.conj()).unwrap();
        let b = log_gamma(z).unwrap().conj();
        prop_assert!((a - b).norm() < 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn reflection(re in -3.7f64..3.7, im in -2.0f64..2.0) {
        let z = c(re, im);
        prop_assume!((z - z.re.round()).norm() > 1e-2);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = std::f64::consts::PI / (std::f64::consts::PI * z).sin();
        prop_assert!(close(lhs, rhs, 1e-11));
    }

    #[test]
    fn rgamma_is_reciprocal(re in 0.1f64..8.0, im in -5.0f64..5.0) {
        let z = c(re, im);
        prop_assert!(close(rgamma(z) * gamma(z).unwrap(), c(1.0, 0.0), 1e-12));
    }

    #[test]
    fn digamma_is_log_derivative(re in 0.5f64..8.0, im in -5.0f64..5.0) {
        let z = c(re, im);
        let h = 1e-5;
        let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
        prop_assert!(close(digamma(z).unwrap(), fd, 1e-8));
    }

    #[test]
    fn beta_and_pochhammer(re in 0.2f64..5.0, im in -3.0f64..3.0, n in 0usize..8) {
        let a = c(re, im);
        let b = c(1.3, -0.4);
        let lhs = beta_fn(a, b).unwrap();
        let rhs = gamma(a).unwrap() * gamma(b).unwrap() / gamma(a + b).unwrap();
        prop_assert!(close(lhs, rhs, 1e-11));
        let p = pochhammer(a, n);
        let r = gamma(a + n as f64).unwrap() / gamma(a).unwrap();
        prop_assert!(close(p, r, 1e-11));
    }

    // Gauss contiguous relation
    // (c - a) F(a-1) + (2a - c + (b - a) z) F(a) + a (z - 1) F(a+1) = 0
    #[test]
    fn contiguous_relation(
        ar in -2.0f64..2.0, ai in -2.0f64..2.0,
        br in -2.0f64..2.0, bi in -1.0f64..1.0,
        cr in 0.3f64..3.0, ci in -1.0f64..1.0,
        z in 0.0f64..0.95,
    ) {
        let (a, b, cc) = (c(ar, ai), c(br, bi), c(cr, ci));
        let f = |a: Complex64| gauss_2f1(HypergeometricArgs::new(a, b, cc, z)).unwrap();
        let (fm, f0, fp) = (f(a - 1.0), f(a), f(a + 1.0));
        let terms = [(cc - a) * fm, (2.0 * a - cc + (b - a) * z) * f0, a * (z - 1.0) * fp];
        let scale = terms.iter().map(|t| t.norm()).fold(1.0, f64::max);
        let sum: Complex64 = terms.iter().sum();
        prop_assert!(sum.norm() < 1e-9 * scale, "residual {}", sum.norm() / scale);
    }

    // The power series and the 1 - z representation agree where both are usable.
    #[test]
    fn branch_consistency(
        ar in -2.0f64..2.0, ai in -2.0f64..2.0,
        br in -2.0f64..2.0, bi in -2.0f64..2.0,
        cr in 0.5f64..3.0, ci in -1.0f64..1.0,
        z in 0.4f64..0.6,
    ) {
        let (a, b, cc) = (c(ar, ai), c(br, bi), c(cr, ci));
        prop_assume!(((cc - a - b).re - (cc - a - b).re.round()).abs() > 0.05
            || (cc - a - b).im.abs() > 0.05);
        let s = series(a, b, cc, z).unwrap();
        let t = transformed(a, b, cc, z).unwrap();
        prop_assert!(close(s, t, 1e-9), "{s} vs {t}");
    }

    // Euler: F(a, b; c; z) = (1 - z)^{c - a - b} F(c - a, c - b; c; z)
    #[test]
    fn euler_transformation(
        ar in -2.0f64..2.0, ai in -1.0f64..1.0,
        br in -2.0f64..2.0, bi in -1.0f64..1.0,
        cr in 0.5f64..3.0,
        z in 0.0f64..0.9,
    ) {
        let (a, b, cc) = (c(ar, ai), c(br, bi), c(cr, 0.0));
        let lhs = gauss_2f1(HypergeometricArgs::new(a, b, cc, z)).unwrap();
        let rhs = c(1.0 - z, 0.0).powc(cc - a - b)
            * gauss_2f1(HypergeometricArgs::new(cc - a, cc - b, cc, z)).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9), "{lhs} vs {rhs}");
    }
}

#[test]
fn elementary_closed_forms() {
    // F(1, 1; 2; z) = -ln(1 - z) / z
    for z in [0.1, 0.5, 0.7, 0.9, 0.99] {
        let v = gauss_2f1(HypergeometricArgs::new(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z))
            .unwrap();
        let e = -(1.0 - z).ln() / z;
        assert!((v.re - e).abs() < 1e-13 * e && v.im.abs() < 1e-14, "{z}: {v} vs {e}");
    }
    // F(a, b; b; z) = (1 - z)^{-a}
    let a = c(0.3, 0.7);
    for z in [0.2, 0.65, 0.95] {
        let v = gauss_2f1(HypergeometricArgs::new(a, c(1.7, -0.2), c(1.7, -0.2), z)).unwrap();
        assert!(close(v, c(1.0 - z, 0.0).powc(-a), 1e-12));
    }
}

#[test]
fn invalid_lower_parameter_and_domain() {
    let e = gauss_2f1(HypergeometricArgs::new(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), 0.3));
    assert!(matches!(e, Err(sl2radial::Error::InvalidC { .. })));
    let e = gauss_2f1(HypergeometricArgs::new(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 1.0));
    assert!(matches!(e, Err(sl2radial::Error::Domain(_))));
}
