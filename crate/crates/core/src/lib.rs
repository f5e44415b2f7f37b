//! Elastic scattering of structured electron wave packets off hydrogen atoms,
//! computed from the phase-space (Wigner) function of the incident beam.
//!
//! Hartree atomic units throughout: lengths in Bohr radii, momenta in inverse
//! Bohr radii, `hbar = m_e = 1`. Angles are in radians unless a name says
//! otherwise.

pub mod analysis;
pub mod beam;
pub mod cli;
pub mod error;
pub mod quadrature;
pub mod scattering;
pub mod target;
pub mod vec2;

pub use beam::{BeamShape, BeamState, PhasePoint, ScanMode, Variant};
pub use error::{Error, Result};
pub use quadrature::{Integral, Interval, QuadratureSpec};
pub use scattering::{EventDensity, Method, MethodChoice, ScatteringConfig, Tolerances};
pub use target::{Amplitude, Kinematics, TargetProfile};
pub use vec2::Vec2;

/// Round-trippable scientific formatting used in every CSV output.
pub(crate) fn sci(x: f64) -> String {
    format!("{x:.16e}")
}
