use std::f64::consts::PI;

use catscatter::scattering::{
    cross_section, event_density, event_density_cat_closed, event_density_cat_quadrature, event_density_gaussian,
    event_density_general, validity_check,
};
use catscatter::{Amplitude, BeamState, Error, Kinematics, Method, MethodChoice, ScatteringConfig, TargetProfile, Vec2};
use proptest::prelude::*;

fn deg(x: f64) -> f64 {
    x.to_radians()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

#[test]
fn general_gaussian_is_phi_independent() {
    let cfg = ScatteringConfig::new(BeamState::gaussian(2.0).unwrap(), TargetProfile::gaussian(20.0, Vec2::ZERO).unwrap());
    let a = event_density_general(&cfg, &Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap()).unwrap();
    let b = event_density_general(&cfg, &Kinematics::elastic(10.0, deg(10.0), deg(137.0)).unwrap()).unwrap();
    assert_eq!(a.method, Method::General4d);
    assert!(rel(a.value, b.value) < 1e-4);
}

#[test]
fn general_even_cat_matches_quadrature() {
    let cfg = ScatteringConfig::new(
        BeamState::even_cat(2.0, 4.0, 0.0).unwrap(),
        TargetProfile::gaussian(20.0, Vec2::new(1.0, -2.0)).unwrap(),
    );
    let kin = Kinematics::elastic(10.0, deg(10.0), 0.5).unwrap();
    let g = event_density_general(&cfg, &kin).unwrap().value;
    let q = event_density_cat_quadrature(&cfg, &kin).unwrap().value;
    assert!(rel(g, q) < 1e-3, "{g} vs {q}");
}

#[test]
fn mixture_is_mean_of_shifted_gaussians() {
    let kin = Kinematics::elastic(10.0, deg(12.0), 0.0).unwrap();
    let (b0, r0) = (Vec2::new(1.0, 0.5), Vec2::polar(3.0, 0.4));
    let pair = ScatteringConfig::new(
        BeamState::incoherent_pair(2.0, 3.0, 0.4).unwrap(),
        TargetProfile::gaussian(6.0, b0).unwrap(),
    );
    let g = |b: Vec2| {
        let cfg = ScatteringConfig::new(BeamState::gaussian(2.0).unwrap(), TargetProfile::gaussian(6.0, b).unwrap());
        event_density_gaussian(&cfg, &kin).unwrap().value
    };
    let mean = 0.5 * (g(b0 - r0) + g(b0 + r0));
    let quad = event_density_cat_quadrature(&pair, &kin).unwrap().value;
    let general = event_density_general(&pair, &kin).unwrap().value;
    assert!(rel(quad, mean) < 1e-4);
    assert!(rel(general, mean) < 1e-4);
}

#[test]
fn anisotropic_per_axis_matches_four_dimensional() {
    // Off-axis target, not aligned with either principal axis.
    let cfg = ScatteringConfig::new(
        BeamState::anisotropic(1.5, 2.5).unwrap(),
        TargetProfile::gaussian(4.0, Vec2::new(2.0, -1.0)).unwrap(),
    );
    let kin = Kinematics::elastic(10.0, deg(10.0), 0.7).unwrap();
    let g = event_density_general(&cfg, &kin).unwrap().value;
    let q = event_density_gaussian(&cfg, &kin).unwrap().value;
    assert!(rel(g, q) < 1e-3, "{g} vs {q}");
}

#[test]
fn custom_amplitude_is_supported_by_quadrature_routes() {
    let screened = Amplitude::custom(|q| 2.0 / (1.0 + q * q));
    let cfg = ScatteringConfig::new(BeamState::odd_cat(2.0, 2.0, 0.0).unwrap(), TargetProfile::gaussian(15.0, Vec2::ZERO).unwrap())
        .with_amplitude(screened);
    let kin = Kinematics::elastic(10.0, deg(8.0), 0.2).unwrap();
    let q = event_density(&cfg, &kin, MethodChoice::Auto).unwrap();
    assert_eq!(q.method, Method::Quadrature2d);
    let g = event_density_general(&cfg, &kin).unwrap();
    assert!(rel(q.value, g.value) < 1e-3);
    assert!(matches!(event_density(&cfg, &kin, MethodChoice::ClosedForm), Err(Error::Unsupported(_))));
}

#[test]
fn auto_routes() {
    let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
    let wide = TargetProfile::wide();
    let m = |s: BeamState| event_density(&ScatteringConfig::new(s, wide), &kin, MethodChoice::Auto).unwrap().method;
    assert_eq!(m(BeamState::odd_cat(2.0, 2.0, 0.0).unwrap()), Method::ClosedForm);
    assert_eq!(m(BeamState::gaussian(2.0).unwrap()), Method::Quadrature2d);
    assert_eq!(m(BeamState::incoherent_pair(2.0, 2.0, 0.0).unwrap()), Method::Quadrature2d);
}

#[test]
fn paraxial_interference_shrinks_with_width() {
    // The φ-dependence falls off roughly as σ⊥⁻².
    let variation = |s: f64| {
        let cfg = ScatteringConfig::new(BeamState::even_cat(s, s, 0.0).unwrap(), TargetProfile::wide());
        let a = event_density_cat_closed(&cfg, &Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap()).unwrap().value;
        let b = event_density_cat_closed(&cfg, &Kinematics::elastic(10.0, deg(10.0), PI / 2.0).unwrap()).unwrap().value;
        rel(a, b)
    };
    let (v10, v100) = (variation(10.0), variation(100.0));
    assert!(v100 < v10);
    assert!((v10 / v100 - 100.0).abs() < 50.0, "{}", v10 / v100);
}

#[test]
fn wide_results_are_cross_sections() {
    let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
    let wide = event_density_gaussian(&ScatteringConfig::new(BeamState::gaussian(2.0).unwrap(), TargetProfile::wide()), &kin).unwrap();
    assert!(wide.wide_limit);
    assert_eq!(cross_section(&wide, 7).unwrap(), wide.value);
    // A target much wider than the beam gives nearly the same cross section.
    let big = ScatteringConfig::new(BeamState::gaussian(2.0).unwrap(), TargetProfile::gaussian(1e4, Vec2::ZERO).unwrap());
    let ed = event_density_gaussian(&big, &kin).unwrap();
    assert!(rel(cross_section(&ed, 1).unwrap(), wide.value) < 1e-6);
}

#[test]
fn validity_report_flags_separation() {
    let items = validity_check(&BeamState::even_cat(2.0, 0.4, 0.0).unwrap(), &TargetProfile::wide(), 1.0);
    assert!(items.iter().any(|i| !i.satisfied && i.condition.contains("asymmetry vanishes")));
    let items = validity_check(&BeamState::gaussian(2.0).unwrap(), &TargetProfile::gaussian(0.5, Vec2::ZERO).unwrap(), 1.0);
    assert!(items.iter().any(|i| !i.satisfied && i.condition.starts_with("sigma_t")));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_equals_quadrature(s in 1.0f64..4.0, k in 1.0f64..3.0, theta in 2.0f64..30.0,
                                     phi in 0.0f64..6.3, odd in any::<bool>(), finite in any::<bool>()) {
        let state = if odd { BeamState::odd_cat(s, k * s, 0.3).unwrap() } else { BeamState::even_cat(s, k * s, 0.3).unwrap() };
        let target = if finite { TargetProfile::gaussian(10.0, Vec2::new(1.0, 2.0)).unwrap() } else { TargetProfile::wide() };
        let cfg = ScatteringConfig::new(state, target);
        let kin = Kinematics::elastic(10.0, deg(theta), phi).unwrap();
        let c = event_density_cat_closed(&cfg, &kin).unwrap();
        let q = event_density_cat_quadrature(&cfg, &kin).unwrap();
        prop_assert!(rel(c.value, q.value) < 1e-6);
        prop_assert!(c.value >= -c.err_est && q.value >= -q.err_est);
    }

    #[test]
    fn periodicity_and_reflection(s in 1.0f64..4.0, k in 0.5f64..3.0, phi_r0 in 0.0f64..3.1,
                                  delta in 0.0f64..1.5, theta in 2.0f64..30.0) {
        let cfg = ScatteringConfig::new(BeamState::even_cat(s, k * s, phi_r0).unwrap(), TargetProfile::wide());
        let at = |phi: f64| event_density_cat_closed(&cfg, &Kinematics::elastic(10.0, deg(theta), phi).unwrap()).unwrap().value;
        let base = at(phi_r0 + delta);
        prop_assert!(rel(base, at(phi_r0 + delta + PI)) < 1e-8);
        prop_assert!(rel(base, at(phi_r0 - delta)) < 1e-8);
    }

    #[test]
    fn totals_nonnegative_for_negative_wigner_states(k in 1.0f64..4.0, theta in 1.0f64..60.0, phi in 0.0f64..6.3) {
        let cfg = ScatteringConfig::new(BeamState::odd_cat(2.0, 2.0 * k, 0.0).unwrap(), TargetProfile::gaussian(8.0, Vec2::new(0.5, 0.0)).unwrap());
        let kin = Kinematics::elastic(10.0, deg(theta), phi).unwrap();
        let ed = event_density_cat_quadrature(&cfg, &kin).unwrap();
        prop_assert!(ed.value >= -ed.err_est);
    }
}
