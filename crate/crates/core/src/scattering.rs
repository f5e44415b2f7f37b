//! Number of elastic scattering events per solid angle, `dν/dΩ`.
//!
//! Three independent routes are provided:
//!
//! * [`event_density_general`] integrates `N_e ∫d²b d²p n(b) W(b, p) f(|Q - p|)²`
//!   directly over four dimensions, for any beam state and any amplitude;
//! * [`event_density_gaussian`] and [`event_density_cat_quadrature`] perform
//!   the impact-parameter integral analytically for a Gaussian target and leave
//!   a two-dimensional momentum integral;
//! * [`event_density_cat_closed`] additionally integrates the momentum
//!   analytically for the hydrogen amplitude, leaving a single Laplace-type
//!   integral over a Schwinger-like parameter `x ∈ [0, ∞)`.
//!
//! With a wide target (`sigma_t -> ∞`) the event density itself vanishes like
//! `1/Σ²`, so those runs report the effective cross section
//! `dσ/dΩ = 2πΣ² N_e⁻¹ dν/dΩ` directly.

use std::f64::consts::PI;

use crate::beam::{wigner, BeamShape, BeamState, PhasePoint, Variant};
use crate::error::{invalid, Error, Result};
use crate::quadrature::{
    integrate_1d, integrate_nd_panelled, oscillatory_panel_width, Integral, Interval, QuadratureSpec,
};
use crate::target::{momentum_transfer, target_density, Amplitude, Kinematics, MomentumTransfer, TargetProfile};
use crate::vec2::Vec2;

/// Quadrature settings for each integration dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub one_d: QuadratureSpec,
    pub two_d: QuadratureSpec,
    pub four_d: QuadratureSpec,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            one_d: QuadratureSpec::one_d(),
            two_d: QuadratureSpec::two_d(),
            four_d: QuadratureSpec::four_d(),
        }
    }
}

impl Tolerances {
    /// Same relative tolerance in every dimension.
    pub fn uniform(rel_tol: f64) -> Self {
        let d = Self::default();
        Self {
            one_d: d.one_d.with_rel_tol(rel_tol),
            two_d: d.two_d.with_rel_tol(rel_tol),
            four_d: d.four_d.with_rel_tol(rel_tol),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScatteringConfig {
    pub n_e: u64,
    pub state: BeamState,
    pub target: TargetProfile,
    pub amplitude: Amplitude,
    pub quad: Tolerances,
}

impl ScatteringConfig {
    /// One incident electron, hydrogen target, default tolerances.
    pub fn new(state: BeamState, target: TargetProfile) -> Self {
        Self {
            n_e: 1,
            state,
            target,
            amplitude: Amplitude::hydrogen(),
            quad: Tolerances::default(),
        }
    }

    pub fn with_n_e(mut self, n_e: u64) -> Result<Self> {
        if n_e < 1 {
            return Err(invalid("n_e must be at least 1"));
        }
        self.n_e = n_e;
        Ok(self)
    }

    pub fn with_amplitude(mut self, amplitude: Amplitude) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn with_tolerances(mut self, quad: Tolerances) -> Self {
        self.quad = quad;
        self
    }

    pub fn with_state(&self, state: BeamState) -> Self {
        Self { state, ..self.clone() }
    }

    /// `Σ² = σ_t² + σ⊥²`; for the anisotropic Gaussian the geometric mean
    /// `Σ_x Σ_y` of the per-axis values. `None` in the wide limit.
    pub fn sigma_sq(&self) -> Option<f64> {
        if self.target.is_wide() {
            return None;
        }
        let (sx, sy) = self.state.widths();
        let t2 = self.target.sigma_t() * self.target.sigma_t();
        Some(((t2 + sx * sx) * (t2 + sy * sy)).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    General4d,
    Quadrature2d,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::General4d => "general4d",
            Method::Quadrature2d => "quadrature2d",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// Which route [`event_density`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// Closed form for cats scattered by hydrogen, two-dimensional quadrature otherwise.
    #[default]
    Auto,
    General4d,
    Quadrature2d,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventDensity {
    /// `dν/dΩ`, or `dσ/dΩ` when `wide_limit` is set.
    pub value: f64,
    pub method: Method,
    pub err_est: f64,
    /// `Σ²` of the run, needed to convert to a cross section.
    pub sigma_sq: Option<f64>,
    pub wide_limit: bool,
}

fn finish(cfg: &ScatteringConfig, method: Method, prefactor: f64, integral: Integral) -> Result<EventDensity> {
    let value = prefactor * integral.value;
    let err_est = (prefactor * integral.err_est).abs();
    if value < -err_est {
        return Err(Error::NegativeTotal { value, err_est });
    }
    Ok(EventDensity {
        value,
        method,
        err_est,
        sigma_sq: cfg.sigma_sq(),
        wide_limit: cfg.target.is_wide(),
    })
}

fn intersect(a: (f64, f64), b: (f64, f64)) -> Option<Interval> {
    Interval::new(a.0.max(b.0), a.1.min(b.1)).ok()
}

/// Direct four-dimensional integration over impact parameter and transverse
/// momentum. Works for every state and amplitude; needs a finite target.
pub fn event_density_general(cfg: &ScatteringConfig, kin: &Kinematics) -> Result<EventDensity> {
    if cfg.target.is_wide() {
        return Err(Error::Unsupported("the four-dimensional route needs a finite target width"));
    }
    let state = &cfg.state;
    let (sx, sy) = state.widths();
    let r0 = state.r0();
    let b0 = cfg.target.b0();
    let st = cfg.target.sigma_t();
    let q = momentum_transfer(kin);

    // Impact parameters where both the target and the beam have support.
    let bx = intersect(
        (-(r0.x.abs() + 8.0 * sx), r0.x.abs() + 8.0 * sx),
        (b0.x - 6.0 * st, b0.x + 6.0 * st),
    );
    let by = intersect(
        (-(r0.y.abs() + 8.0 * sy), r0.y.abs() + 8.0 * sy),
        (b0.y - 6.0 * st, b0.y + 6.0 * st),
    );
    let (Some(bx), Some(by)) = (bx, by) else {
        return finish(cfg, Method::General4d, 0.0, Integral { value: 0.0, err_est: 0.0 });
    };
    let px = Interval::symmetric(4.0 / sx)?;
    let py = Interval::symmetric(4.0 / sy)?;
    let widths = if state.is_cat() {
        [None, None, oscillatory_panel_width(2.0 * r0.x), oscillatory_panel_width(2.0 * r0.y)]
    } else {
        [None; 4]
    };

    let integral = integrate_nd_panelled(
        |v| {
            let b = Vec2::new(v[0], v[1]);
            let p = Vec2::new(v[2], v[3]);
            let n = target_density(&cfg.target, b).unwrap_or(0.0);
            n * wigner(state, PhasePoint::new(b, p)) * cfg.amplitude.squared_from_q2(q.shifted_norm_sq(p))
        },
        &[bx, by, px, py],
        &cfg.quad.four_d,
        &widths,
    )?;
    finish(cfg, Method::General4d, cfg.n_e as f64, integral)
}

/// Single Gaussian packet (isotropic or anisotropic) with the impact
/// parameter integrated analytically per axis.
pub fn event_density_gaussian(cfg: &ScatteringConfig, kin: &Kinematics) -> Result<EventDensity> {
    let (sx, sy) = match cfg.state.shape() {
        BeamShape::Gaussian { sigma_perp } => (sigma_perp, sigma_perp),
        BeamShape::AnisotropicGaussian { sigma_x, sigma_y } => (sigma_x, sigma_y),
        _ => return Err(Error::Unsupported("event_density_gaussian needs a single Gaussian packet")),
    };
    let q = momentum_transfer(kin);
    let prefactor = if cfg.target.is_wide() {
        2.0 * sx * sy / PI
    } else {
        let t2 = cfg.target.sigma_t().powi(2);
        let (cx, cy) = (t2 + sx * sx, t2 + sy * sy);
        let b0 = cfg.target.b0();
        let shift = (-b0.x * b0.x / (2.0 * cx) - b0.y * b0.y / (2.0 * cy)).exp();
        cfg.n_e as f64 * sx * sy / (PI * PI * (cx * cy).sqrt()) * shift
    };
    let bounds = [Interval::symmetric(4.0 / sx)?, Interval::symmetric(4.0 / sy)?];
    let integral = integrate_nd_panelled(
        |v| {
            let p = Vec2::new(v[0], v[1]);
            let weight = (-2.0 * (sx * sx * p.x * p.x + sy * sy * p.y * p.y)).exp();
            cfg.amplitude.squared_from_q2(q.shifted_norm_sq(p)) * weight
        },
        &bounds,
        &cfg.quad.two_d,
        &[],
    )?;
    finish(cfg, Method::Quadrature2d, prefactor, integral)
}

struct CatGeometry {
    sigma: f64,
    r0: Vec2,
    /// `+1` even, `-1` odd, `0` for the incoherent pair.
    sign: f64,
    normalization: f64,
    /// `cosh(b0·r0/Σ²) exp(-r0²/2Σ²)`, or 1 in the wide limit.
    direct: f64,
}

fn cat_geometry(cfg: &ScatteringConfig) -> Result<CatGeometry> {
    let state = &cfg.state;
    let (sigma, r0, sign) = match state.shape() {
        BeamShape::EvenCat { sigma_perp, r0 } => (sigma_perp, r0, 1.0),
        BeamShape::OddCat { sigma_perp, r0 } => (sigma_perp, r0, -1.0),
        BeamShape::IncoherentPair { sigma_perp, r0 } => (sigma_perp, r0, 0.0),
        _ => return Err(Error::Unsupported("expected a cat state or an incoherent pair")),
    };
    if state.variant() == Variant::OddCat && r0.norm() / sigma < crate::beam::ODD_CAT_MIN_SEPARATION {
        return Err(Error::InvalidCatSeparation(r0.norm() / sigma));
    }
    let direct = if cfg.target.is_wide() {
        1.0
    } else {
        let big = cfg.target.sigma_t().powi(2) + sigma * sigma;
        let u = cfg.target.b0().dot(r0) / big;
        let v = r0.norm_sq() / (2.0 * big);
        0.5 * ((u - v).exp() + (-u - v).exp())
    };
    Ok(CatGeometry {
        sigma,
        r0,
        sign,
        normalization: state.cat_normalization(),
        direct,
    })
}

/// `N_e σ⊥² / (π² Σ²) exp(-b0²/2Σ²)`, or `2σ⊥²/π` in the wide limit.
fn isotropic_prefactor(cfg: &ScatteringConfig, sigma: f64) -> f64 {
    if cfg.target.is_wide() {
        2.0 * sigma * sigma / PI
    } else {
        let big = cfg.target.sigma_t().powi(2) + sigma * sigma;
        let b0 = cfg.target.b0();
        cfg.n_e as f64 * sigma * sigma / (PI * PI * big) * (-b0.norm_sq() / (2.0 * big)).exp()
    }
}

/// Two packets (coherent or not) with the impact parameter integrated
/// analytically and the transverse momentum by quadrature. Any amplitude.
pub fn event_density_cat_quadrature(cfg: &ScatteringConfig, kin: &Kinematics) -> Result<EventDensity> {
    let geo = cat_geometry(cfg)?;
    let q = momentum_transfer(kin);
    let s = geo.sigma;
    let prefactor = isotropic_prefactor(cfg, s) / geo.normalization;
    let bound = Interval::symmetric(4.0 / s)?;
    let widths = if geo.sign != 0.0 {
        [oscillatory_panel_width(2.0 * geo.r0.x), oscillatory_panel_width(2.0 * geo.r0.y)]
    } else {
        [None, None]
    };
    let integral = integrate_nd_panelled(
        |v| {
            let p = Vec2::new(v[0], v[1]);
            let weight = (-2.0 * s * s * p.norm_sq()).exp();
            let bracket = geo.direct + geo.sign * (2.0 * geo.r0.dot(p)).cos();
            cfg.amplitude.squared_from_q2(q.shifted_norm_sq(p)) * weight * bracket
        },
        &[bound, bound],
        &cfg.quad.two_d,
        &widths,
    )?;
    finish(cfg, Method::Quadrature2d, prefactor, integral)
}

/// Auxiliary quantities of the closed-form integrand at parameter `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormTerms {
    /// Exponent factor, `1 + (a/2)² (Q_z² + Q⊥²/(1 + x a²/8σ⊥²))`.
    pub g: f64,
    pub x: f64,
    /// Fringe scale `x ε / (1 + x ε)` with `ε = a²/8σ⊥²`.
    pub s: f64,
}

pub fn closed_form_terms(x: f64, q: &MomentumTransfer, sigma: f64, a: f64) -> ClosedFormTerms {
    let eps = a * a / (8.0 * sigma * sigma);
    let d = 1.0 + x * eps;
    let g = 1.0 + 0.25 * a * a * (q.qz * q.qz + q.qperp.norm_sq() / d);
    assert!(g >= 1.0, "closed-form exponent g = {g} < 1");
    ClosedFormTerms { g, x, s: x * eps / d }
}

/// Hydrogen target, cat beam: momentum integrated analytically, one
/// remaining integral over `x ∈ [0, ∞)`.
pub fn event_density_cat_closed(cfg: &ScatteringConfig, kin: &Kinematics) -> Result<EventDensity> {
    let a = cfg
        .amplitude
        .hydrogen_radius()
        .ok_or(Error::Unsupported("the closed form needs the hydrogen amplitude"))?;
    if !cfg.state.is_cat() {
        return Err(Error::Unsupported("the closed form is for even and odd cats"));
    }
    let geo = cat_geometry(cfg)?;
    let q = momentum_transfer(kin);
    let s = geo.sigma;
    let eps = a * a / (8.0 * s * s);
    let fringe = 2.0 * geo.r0.dot(q.qperp);
    let r0_sq = geo.r0.norm_sq();

    let prefactor = {
        let base = 0.25 * a * a / geo.normalization;
        if cfg.target.is_wide() {
            base
        } else {
            let big = cfg.target.sigma_t().powi(2) + s * s;
            let b0 = cfg.target.b0();
            cfg.n_e as f64 / (2.0 * PI * big) * base * (-b0.norm_sq() / (2.0 * big)).exp()
        }
    };

    // g only decreases with x, towards 1 + (a/2)² Q_z².
    let g_floor = 1.0 + 0.25 * a * a * q.qz * q.qz;
    let tail = (cfg.quad.one_d.abs_tol / 10.0).max(f64::MIN_POSITIVE);
    let x_max = -tail.ln() / g_floor + 40.0;

    let integral = integrate_1d(
        |x| {
            let t = closed_form_terms(x, &q, s, a);
            let d = 1.0 + x * eps;
            let poly = x + x * x + x * x * x / 6.0;
            let bracket = geo.direct + geo.sign * (fringe * t.s).cos() * (-r0_sq / (2.0 * s * s * d)).exp();
            (-x * t.g).exp() * poly / d * bracket
        },
        Interval::new(0.0, x_max)?,
        &cfg.quad.one_d,
    )?;
    finish(cfg, Method::ClosedForm, prefactor, integral)
}

/// Picks an evaluation route for the configured state.
pub fn event_density(cfg: &ScatteringConfig, kin: &Kinematics, method: MethodChoice) -> Result<EventDensity> {
    let single_packet = matches!(cfg.state.variant(), Variant::Gaussian | Variant::AnisotropicGaussian);
    match method {
        MethodChoice::General4d => event_density_general(cfg, kin),
        MethodChoice::ClosedForm => event_density_cat_closed(cfg, kin),
        MethodChoice::Quadrature2d if single_packet => event_density_gaussian(cfg, kin),
        MethodChoice::Quadrature2d => event_density_cat_quadrature(cfg, kin),
        MethodChoice::Auto if single_packet => event_density_gaussian(cfg, kin),
        MethodChoice::Auto if cfg.state.is_cat() && cfg.amplitude.hydrogen_radius().is_some() => {
            event_density_cat_closed(cfg, kin)
        }
        MethodChoice::Auto => event_density_cat_quadrature(cfg, kin),
    }
}

/// Effective cross section `dσ/dΩ = 2πΣ² N_e⁻¹ dν/dΩ`. Wide-limit results are
/// already cross sections and are returned unchanged.
pub fn cross_section(ed: &EventDensity, n_e: u64) -> Result<f64> {
    if ed.wide_limit {
        return Ok(ed.value);
    }
    if n_e < 1 {
        return Err(invalid("n_e must be at least 1"));
    }
    let sigma_sq = ed.sigma_sq.ok_or(Error::MissingSigma)?;
    Ok(2.0 * PI * sigma_sq * ed.value / n_e as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityItem {
    pub condition: &'static str,
    pub satisfied: bool,
    /// Ratio of the larger to the smaller of the two compared scales.
    pub margin: f64,
}

/// Checks the regime in which the event-density formulas hold. `≪` needs a
/// factor of 10 between the two scales, `≳` a factor of 1.
pub fn validity_check(state: &BeamState, target: &TargetProfile, a: f64) -> Vec<ValidityItem> {
    let much = |condition, margin: f64| ValidityItem { condition, satisfied: margin >= 10.0, margin };
    let atleast = |condition, margin: f64| ValidityItem { condition, satisfied: margin >= 1.0, margin };
    let (sx, sy) = state.widths();
    let sigma = sx.min(sy);
    let mut items = vec![
        much("a << sigma_z", state.sigma_z() / a),
        much("sigma_z << sigma_perp^2 p_i", sigma * sigma * state.p_i() / state.sigma_z()),
        much("theta_k = 1/(sigma_perp p_i) << 1", sigma * state.p_i()),
    ];
    if target.is_wide() {
        items.push(much("sigma_t >> a", f64::INFINITY));
    } else {
        items.push(much("sigma_t >> a", target.sigma_t() / a));
    }
    if state.is_cat() {
        items.push(atleast("sigma_perp >~ a (asymmetry needs a focused beam)", sigma / a));
        items.push(atleast(
            "r0 >~ sigma_perp (asymmetry vanishes otherwise)",
            state.r0().norm() / sigma,
        ));
    }
    for item in items.iter().filter(|i| !i.satisfied) {
        log::warn!("validity: {} not satisfied (margin {:.3})", item.condition, item.margin);
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    fn wide(state: BeamState) -> ScatteringConfig {
        ScatteringConfig::new(state, TargetProfile::wide())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn gaussian_offset_factor() {
        let state = BeamState::gaussian(2.0).unwrap();
        let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
        let on = ScatteringConfig::new(state, TargetProfile::gaussian(5.0, Vec2::ZERO).unwrap());
        let off = ScatteringConfig::new(state, TargetProfile::gaussian(5.0, Vec2::new(3.0, 0.0)).unwrap());
        let ratio = event_density_gaussian(&off, &kin).unwrap().value / event_density_gaussian(&on, &kin).unwrap().value;
        assert!(rel(ratio, (-9.0f64 / (2.0 * 29.0)).exp()) < 1e-6);
    }

    #[test]
    fn gaussian_is_even_cat_at_zero_separation() {
        let kin = Kinematics::elastic(10.0, deg(12.0), 0.4).unwrap();
        for target in [TargetProfile::wide(), TargetProfile::gaussian(7.0, Vec2::new(1.0, 2.0)).unwrap()] {
            let g = event_density_gaussian(&ScatteringConfig::new(BeamState::gaussian(2.0).unwrap(), target), &kin).unwrap();
            let c = event_density_cat_closed(&ScatteringConfig::new(BeamState::even_cat(2.0, 0.0, 0.0).unwrap(), target), &kin)
                .unwrap();
            assert!(rel(c.value, g.value) < 1e-8, "{} vs {}", c.value, g.value);
        }
    }

    #[test]
    fn wide_gaussian_approaches_plane_wave() {
        // A very wide packet sees the plane-wave |f(Q)|².
        let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
        let cfg = wide(BeamState::gaussian(200.0).unwrap());
        let ed = event_density_gaussian(&cfg, &kin).unwrap();
        let q = momentum_transfer(&kin);
        let f = crate::target::hydrogen_amplitude(q.norm_sq().sqrt(), 1.0);
        assert!(rel(ed.value, f * f) < 1e-4);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        for (state, theta) in [
            (BeamState::odd_cat(2.0, 4.0, 0.0).unwrap(), 10.0),
            (BeamState::even_cat(1.0, 2.0, 0.7).unwrap(), 20.0),
        ] {
            let kin = Kinematics::elastic(10.0, deg(theta), 0.3).unwrap();
            for target in [TargetProfile::wide(), TargetProfile::gaussian(6.0, Vec2::new(2.0, -1.0)).unwrap()] {
                let cfg = ScatteringConfig::new(state, target);
                let c = event_density_cat_closed(&cfg, &kin).unwrap();
                let q = event_density_cat_quadrature(&cfg, &kin).unwrap();
                assert!(rel(c.value, q.value) < 1e-8, "{} vs {}", c.value, q.value);
                assert_eq!(c.method, Method::ClosedForm);
                assert_eq!(q.method, Method::Quadrature2d);
            }
        }
    }

    #[test]
    fn cat_period_pi_in_phi() {
        let cfg = wide(BeamState::even_cat(2.0, 3.0, 0.5).unwrap());
        let kin = Kinematics::elastic(10.0, deg(10.0), 0.9).unwrap();
        let a = event_density_cat_quadrature(&cfg, &kin).unwrap().value;
        let b = event_density_cat_quadrature(&cfg, &kin.with_phi(0.9 + PI)).unwrap().value;
        assert!(rel(a, b) < 1e-8);
    }

    #[test]
    fn closed_form_rejects_other_inputs() {
        let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
        let g = wide(BeamState::gaussian(2.0).unwrap());
        assert!(matches!(event_density_cat_closed(&g, &kin), Err(Error::Unsupported(_))));
        let custom = wide(BeamState::odd_cat(2.0, 2.0, 0.0).unwrap()).with_amplitude(Amplitude::custom(|q| 1.0 / (1.0 + q * q)));
        assert!(matches!(event_density_cat_closed(&custom, &kin), Err(Error::Unsupported(_))));
        assert!(event_density_cat_quadrature(&custom, &kin).is_ok());
    }

    #[test]
    fn general_requires_finite_target() {
        let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
        let cfg = wide(BeamState::gaussian(2.0).unwrap());
        assert!(matches!(event_density_general(&cfg, &kin), Err(Error::Unsupported(_))));
    }

    #[test]
    fn general_matches_gaussian_quadrature() {
        let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
        let cfg = ScatteringConfig::new(
            BeamState::gaussian(2.0).unwrap(),
            TargetProfile::gaussian(5.0, Vec2::new(1.0, 0.0)).unwrap(),
        );
        let g = event_density_general(&cfg, &kin).unwrap();
        let q = event_density_gaussian(&cfg, &kin).unwrap();
        assert!(rel(g.value, q.value) < 1e-4, "{} vs {}", g.value, q.value);
    }

    #[test]
    fn cross_section_conversion() {
        let ed = EventDensity { value: 1.0, method: Method::ClosedForm, err_est: 0.0, sigma_sq: Some(1.0), wide_limit: false };
        assert_relative_eq!(cross_section(&ed, 1).unwrap(), 2.0 * PI);
        assert_eq!(cross_section(&EventDensity { value: 0.0, ..ed }, 1).unwrap(), 0.0);
        let missing = EventDensity { sigma_sq: None, ..ed };
        assert_eq!(cross_section(&missing, 1), Err(Error::MissingSigma));
        let w = EventDensity { value: 0.3, sigma_sq: None, wide_limit: true, ..ed };
        assert_eq!(cross_section(&w, 5).unwrap(), 0.3);
    }

    #[test]
    fn cross_section_independent_of_beam_size() {
        let kin = Kinematics::elastic(10.0, deg(10.0), 0.0).unwrap();
        let target = TargetProfile::gaussian(10.0, Vec2::ZERO).unwrap();
        let one = ScatteringConfig::new(BeamState::odd_cat(2.0, 2.0, 0.0).unwrap(), target);
        let two = one.clone().with_n_e(2).unwrap();
        let a = event_density_cat_closed(&one, &kin).unwrap();
        let b = event_density_cat_closed(&two, &kin).unwrap();
        assert_relative_eq!(b.value, 2.0 * a.value, max_relative = 1e-15);
        assert_relative_eq!(cross_section(&a, 1).unwrap(), cross_section(&b, 2).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn g_is_at_least_one() {
        let q = momentum_transfer(&Kinematics::elastic(10.0, deg(40.0), 1.0).unwrap());
        for x in [0.0, 0.1, 1.0, 10.0, 1e3] {
            let t = closed_form_terms(x, &q, 2.0, 1.0);
            assert!(t.g >= 1.0);
            assert!((0.0..1.0).contains(&t.s));
        }
    }

    #[test]
    fn validity_examples() {
        let state = BeamState::with_longitudinal(BeamShape::Gaussian { sigma_perp: 2.0 }, 10.0, 10.0).unwrap();
        let items = validity_check(&state, &TargetProfile::wide(), 1.0);
        assert_eq!(items[0].margin, 10.0);
        assert!(items[0].satisfied);
        assert_eq!(items[1].margin, 4.0);
        assert!(!items[1].satisfied);
        assert_eq!(items[2].margin, 20.0);
        assert!(items[2].satisfied);

        let cat = BeamState::even_cat(2.0, 0.4, 0.0).unwrap();
        let items = validity_check(&cat, &TargetProfile::wide(), 1.0);
        let sep = items.iter().find(|i| i.condition.starts_with("r0")).unwrap();
        assert!(!sep.satisfied);
        assert_relative_eq!(sep.margin, 0.2);
    }
}
