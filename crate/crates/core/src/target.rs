//! Target profiles, scattering kinematics and the hydrogen Born amplitude.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::vec2::Vec2;

/// Gaussian areal density of target atoms, or its infinitely wide limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetProfile {
    sigma_t: f64,
    b0: Vec2,
    wide_limit: bool,
}

impl TargetProfile {
    pub fn gaussian(sigma_t: f64, b0: Vec2) -> Result<Self> {
        if !(sigma_t > 0.0 && sigma_t.is_finite()) {
            return Err(invalid(format!("sigma_t must be positive, got {sigma_t}")));
        }
        if !b0.is_finite() {
            return Err(invalid("b0 must be finite"));
        }
        Ok(Self { sigma_t, b0, wide_limit: false })
    }

    /// `sigma_t -> infinity`, taken analytically in the scattering formulas.
    pub fn wide() -> Self {
        Self { sigma_t: f64::INFINITY, b0: Vec2::ZERO, wide_limit: true }
    }

    pub fn sigma_t(&self) -> f64 {
        self.sigma_t
    }

    pub fn b0(&self) -> Vec2 {
        self.b0
    }

    pub fn is_wide(&self) -> bool {
        self.wide_limit
    }
}

/// `n(b) = exp(-(b - b0)² / 2σ_t²) / (2π σ_t²)`.
pub fn target_density(profile: &TargetProfile, b: Vec2) -> Result<f64> {
    if profile.wide_limit {
        return Err(Error::WideLimitHasNoDensity);
    }
    let s2 = profile.sigma_t * profile.sigma_t;
    Ok((-(b - profile.b0).norm_sq() / (2.0 * s2)).exp() / (2.0 * PI * s2))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub p_i: f64,
    pub p_f: f64,
    /// Polar angle in radians.
    pub theta: f64,
    /// Azimuthal angle in radians.
    pub phi: f64,
}

impl Kinematics {
    pub fn new(p_i: f64, p_f: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(p_i > 0.0 && p_i.is_finite() && p_f > 0.0 && p_f.is_finite()) {
            return Err(invalid(format!("momenta must be positive, got p_i={p_i}, p_f={p_f}")));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(invalid(format!("theta must lie in [0, pi], got {theta}")));
        }
        if !phi.is_finite() {
            return Err(invalid("phi must be finite"));
        }
        if ((p_f - p_i) / p_i).abs() > 1e-9 {
            log::warn!("inelastic kinematics: p_f = {p_f} differs from p_i = {p_i}");
        }
        Ok(Self { p_i, p_f, theta, phi })
    }

    /// Elastic kinematics, `p_f = p_i`.
    pub fn elastic(p: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(p, p, theta, phi)
    }

    pub fn with_phi(self, phi: f64) -> Self {
        Self { phi, ..self }
    }

    pub fn with_theta(self, theta: f64) -> Result<Self> {
        Self::new(self.p_i, self.p_f, theta, self.phi)
    }

    pub fn is_elastic(&self) -> bool {
        ((self.p_f - self.p_i) / self.p_i).abs() <= 1e-9
    }
}

/// Three-momentum transfer `p_f - p_i ẑ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumTransfer {
    pub qz: f64,
    pub qperp: Vec2,
}

impl MomentumTransfer {
    pub fn norm_sq(&self) -> f64 {
        self.qz * self.qz + self.qperp.norm_sq()
    }

    /// `|Q - p|²` for a transverse momentum `p`.
    pub fn shifted_norm_sq(&self, p: Vec2) -> f64 {
        self.qz * self.qz + (self.qperp - p).norm_sq()
    }
}

pub fn momentum_transfer(kin: &Kinematics) -> MomentumTransfer {
    let (s, c) = kin.theta.sin_cos();
    MomentumTransfer {
        qz: kin.p_f * c - kin.p_i,
        qperp: Vec2::polar(kin.p_f * s, kin.phi),
    }
}

/// First Born amplitude of hydrogen in its 1s state:
/// `(a/2) [1/(1 + (a/2)² q²) + 1/(1 + (a/2)² q²)²]`.
pub fn hydrogen_amplitude(q: f64, a: f64) -> f64 {
    let u = 1.0 + 0.25 * a * a * q * q;
    0.5 * a * (1.0 / u + 1.0 / (u * u))
}

/// A real Born amplitude as a function of the momentum transfer magnitude.
#[derive(Clone)]
pub enum Amplitude {
    Hydrogen1s { a: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Amplitude {
    pub fn hydrogen() -> Self {
        Amplitude::Hydrogen1s { a: 1.0 }
    }

    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Amplitude::Custom(Arc::new(f))
    }

    pub fn eval(&self, q: f64) -> f64 {
        match self {
            Amplitude::Hydrogen1s { a } => hydrogen_amplitude(q, *a),
            Amplitude::Custom(f) => f(q),
        }
    }

    /// `f(q)²` from `q²`, skipping the square root for hydrogen.
    pub fn squared_from_q2(&self, q2: f64) -> f64 {
        match self {
            Amplitude::Hydrogen1s { a } => {
                let u = 1.0 + 0.25 * a * a * q2;
                let f = 0.5 * a * (1.0 / u + 1.0 / (u * u));
                f * f
            }
            Amplitude::Custom(f) => {
                let v = f(q2.sqrt());
                v * v
            }
        }
    }

    /// Bohr radius when this is the hydrogen amplitude.
    pub fn hydrogen_radius(&self) -> Option<f64> {
        match self {
            Amplitude::Hydrogen1s { a } => Some(*a),
            Amplitude::Custom(_) => None,
        }
    }
}

impl fmt::Debug for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Amplitude::Hydrogen1s { a } => f.debug_struct("Hydrogen1s").field("a", a).finish(),
            Amplitude::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Default for Amplitude {
    fn default() -> Self {
        Self::hydrogen()
    }
}
