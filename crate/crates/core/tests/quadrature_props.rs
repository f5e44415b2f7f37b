use catscatter::quadrature::{integrate_1d, integrate_nd};
use catscatter::{Interval, QuadratureSpec};
use proptest::prelude::*;

fn f(c: f64, x: f64) -> f64 {
    (c * x).sin() + (-x * x).exp()
}

fn g(x: f64) -> f64 {
    1.0 / (1.0 + x * x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearity_1d(a in -5.0f64..5.0, b in -5.0f64..5.0, c in 0.1f64..5.0, lo in -4.0f64..0.0, w in 0.1f64..6.0) {
        let spec = QuadratureSpec::one_d().with_abs_tol(1e-13);
        let d = Interval::new(lo, lo + w).unwrap();
        let combo = integrate_1d(|x| a * f(c, x) + b * g(x), d, &spec).unwrap().value;
        let parts = a * integrate_1d(|x| f(c, x), d, &spec).unwrap().value + b * integrate_1d(g, d, &spec).unwrap().value;
        prop_assert!((combo - parts).abs() <= 1e-9 * (1.0 + combo.abs()));
    }

    #[test]
    fn splitting_1d(c in 0.1f64..5.0, lo in -4.0f64..0.0, w in 0.1f64..6.0, t in 0.05f64..0.95) {
        let spec = QuadratureSpec::one_d().with_abs_tol(1e-13);
        let mid = lo + t * w;
        let whole = integrate_1d(|x| f(c, x), Interval::new(lo, lo + w).unwrap(), &spec).unwrap().value;
        let left = integrate_1d(|x| f(c, x), Interval::new(lo, mid).unwrap(), &spec).unwrap().value;
        let right = integrate_1d(|x| f(c, x), Interval::new(mid, lo + w).unwrap(), &spec).unwrap().value;
        prop_assert!((whole - left - right).abs() <= 1e-10 * (1.0 + whole.abs()));
    }

    #[test]
    fn splitting_2d(c in 0.1f64..3.0, t in 0.1f64..0.9) {
        let spec = QuadratureSpec::two_d().with_abs_tol(1e-13);
        let h = |v: &[f64]| (c * v[0] * v[1]).cos() * (-(v[0] * v[0] + v[1] * v[1]) / 4.0).exp();
        let y = Interval::new(-3.0, 3.0).unwrap();
        let mid = -2.0 + 4.0 * t;
        let whole = integrate_nd(h, &[Interval::new(-2.0, 2.0).unwrap(), y], &spec).unwrap().value;
        let a = integrate_nd(h, &[Interval::new(-2.0, mid).unwrap(), y], &spec).unwrap().value;
        let b = integrate_nd(h, &[Interval::new(mid, 2.0).unwrap(), y], &spec).unwrap().value;
        prop_assert!((whole - a - b).abs() <= 1e-9 * (1.0 + whole.abs()));
    }

    #[test]
    fn semi_infinite_exponential(lam in 0.2f64..5.0, lo in -2.0f64..2.0) {
        let r = integrate_1d(|x| (-lam * (x - lo)).exp(), Interval::semi_infinite(lo).unwrap(), &QuadratureSpec::one_d()).unwrap();
        prop_assert!((r.value * lam - 1.0).abs() < 1e-10);
    }
}

#[test]
fn deterministic_results() {
    let spec = QuadratureSpec::four_d();
    let b = [Interval::symmetric(3.0).unwrap(); 4];
    let h = |v: &[f64]| (-(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3])).exp() * (1.0 + v[0] * v[3]).cos();
    let a = integrate_nd(h, &b, &spec).unwrap();
    let c = integrate_nd(h, &b, &spec).unwrap();
    assert_eq!(a.value.to_bits(), c.value.to_bits());
    assert_eq!(a.err_est.to_bits(), c.err_est.to_bits());
}
