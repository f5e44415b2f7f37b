//! Azimuthal asymmetry, parameter sweeps, oscillation detection and peak
//! finding on top of the scattering engine.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beam::{BeamShape, BeamState};
use crate::error::{invalid, Error, Result};
use crate::scattering::{event_density, validity_check, MethodChoice, ScatteringConfig};
use crate::target::Kinematics;

/// How the azimuthal scan is condensed into a single number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// `[dν(φ_r0 + π/2) - dν(φ_r0)] / [dν(φ_r0 + π/2) + dν(φ_r0)]`, signed.
    #[default]
    ParaPerp,
    /// `(max - min) / (max + min)` over the azimuthal grid.
    MinMax,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::ParaPerp => "para-perp",
            Metric::MinMax => "minmax",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AsymmetrySpec {
    pub cfg: ScatteringConfig,
    /// Polar angle and momenta; the azimuth is overwritten by the scan.
    pub kin_base: Kinematics,
    pub phi_grid_n: usize,
    pub metric: Metric,
    pub method: MethodChoice,
}

impl AsymmetrySpec {
    pub fn new(cfg: ScatteringConfig, kin_base: Kinematics) -> Self {
        Self {
            cfg,
            kin_base,
            phi_grid_n: 16,
            metric: Metric::ParaPerp,
            method: MethodChoice::Auto,
        }
    }

    pub fn with_metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    pub fn with_phi_grid(mut self, n: usize) -> Self {
        self.phi_grid_n = n;
        self
    }

    pub fn with_method(mut self, method: MethodChoice) -> Self {
        self.method = method;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymmetryResult {
    pub a: f64,
    pub metric: Metric,
    /// `(φ, dν)` pairs in ascending `φ`, starting at `φ_r0`.
    pub phi_scan: Vec<(f64, f64)>,
    pub theta: f64,
    /// Value of the swept parameter, when produced by [`sweep`].
    pub axis_value: Option<f64>,
}

/// Azimuths sampled for a given metric: the two principal directions for
/// `ParaPerp`; otherwise `n` equally spaced points over one π period starting
/// at `φ_r0`, plus `φ_r0 + π/2` if it is not already a grid point.
fn phi_grid(phi_r0: f64, n: usize, metric: Metric) -> Vec<f64> {
    match metric {
        Metric::ParaPerp => vec![phi_r0, phi_r0 + FRAC_PI_2],
        Metric::MinMax => {
            let mut phis: Vec<f64> = (0..n).map(|k| phi_r0 + PI * k as f64 / n as f64).collect();
            if n % 2 == 1 {
                let at = phis.partition_point(|&p| p < phi_r0 + FRAC_PI_2);
                phis.insert(at, phi_r0 + FRAC_PI_2);
            }
            phis
        }
    }
}

pub fn azimuthal_asymmetry(spec: &AsymmetrySpec) -> Result<AsymmetryResult> {
    if spec.phi_grid_n < 8 {
        return Err(invalid(format!("phi_grid_n must be at least 8, got {}", spec.phi_grid_n)));
    }
    let phi_r0 = spec.cfg.state.phi_r0();
    let phis = phi_grid(phi_r0, spec.phi_grid_n, spec.metric);
    let values: Vec<Result<f64>> = phis
        .par_iter()
        .map(|&phi| event_density(&spec.cfg, &spec.kin_base.with_phi(phi), spec.method).map(|ed| ed.value))
        .collect();
    let mut phi_scan = Vec::with_capacity(phis.len());
    for (phi, v) in phis.iter().zip(values) {
        phi_scan.push((*phi, v?));
    }

    let (num, den) = match spec.metric {
        Metric::ParaPerp => {
            let (para, perp) = (phi_scan[0].1, phi_scan[1].1);
            (perp - para, perp + para)
        }
        Metric::MinMax => {
            let max = phi_scan.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            let min = phi_scan.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            (max - min, max + min)
        }
    };
    if den.abs() < 1e-300 {
        return Err(Error::DegenerateDenominator);
    }
    Ok(AsymmetryResult {
        a: num / den,
        metric: spec.metric,
        phi_scan,
        theta: spec.kin_base.theta,
        axis_value: None,
    })
}

/// Parameter varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    /// Separation `|r0|` at fixed `σ⊥` and `φ_r0`.
    R0,
    /// Packet width at fixed `r0/σ⊥` (and fixed `σ_y/σ_x` for anisotropic beams).
    SigmaPerp,
    /// Polar angle in radians.
    Theta,
    /// Incident momentum; elastic kinematics are kept.
    PI,
    /// `σ_y/σ_x` of an anisotropic Gaussian at fixed `σ_x`.
    AspectRatio,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::R0 => "r0",
            SweepAxis::SigmaPerp => "sigma-perp",
            SweepAxis::Theta => "theta",
            SweepAxis::PI => "pi",
            SweepAxis::AspectRatio => "aspect-ratio",
        }
    }
}

/// The template with one parameter replaced.
pub fn spec_at(template: &AsymmetrySpec, axis: SweepAxis, value: f64) -> Result<AsymmetrySpec> {
    let mut spec = template.clone();
    let state = &template.cfg.state;
    match axis {
        SweepAxis::R0 => spec.cfg.state = state.with_separation(value)?,
        SweepAxis::SigmaPerp => spec.cfg.state = state.rescaled(value)?,
        SweepAxis::Theta => spec.kin_base = template.kin_base.with_theta(value)?,
        SweepAxis::PI => {
            spec.cfg.state = state.with_p_i(value)?;
            let k = template.kin_base;
            spec.kin_base = Kinematics::elastic(value, k.theta, k.phi)?;
        }
        SweepAxis::AspectRatio => {
            let BeamShape::AnisotropicGaussian { sigma_x, .. } = state.shape() else {
                return Err(invalid("the aspect-ratio axis needs an anisotropic Gaussian"));
            };
            let shape = BeamShape::AnisotropicGaussian { sigma_x, sigma_y: value * sigma_x };
            spec.cfg.state = BeamState::with_longitudinal(shape, state.sigma_z(), state.p_i())?;
        }
    }
    Ok(spec)
}

/// One asymmetry per value, evaluated in parallel and returned in input
/// order. A failing point is reported in its row and does not stop the sweep.
pub fn sweep(template: &AsymmetrySpec, axis: SweepAxis, values: &[f64]) -> Result<Vec<Result<AsymmetryResult>>> {
    if values.is_empty() {
        return Err(invalid("sweep needs at least one value"));
    }
    if !template.kin_base.is_elastic() {
        log::warn!("sweep with p_f != p_i");
    }
    validity_check(&template.cfg.state, &template.cfg.target, template.cfg.amplitude.hydrogen_radius().unwrap_or(1.0));
    Ok(values
        .par_iter()
        .map(|&v| {
            let spec = spec_at(template, axis, v)?;
            let mut r = azimuthal_asymmetry(&spec)?;
            r.axis_value = Some(v);
            Ok(r)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OscillationReport {
    /// Strict sign changes of the values.
    pub sign_changes: usize,
    /// Strict sign changes of the first differences.
    pub diff_sign_changes: usize,
    /// No change of direction (flat steps allowed).
    pub is_monotonic: bool,
}

fn strict_sign_changes(v: impl Iterator<Item = f64>) -> usize {
    let mut last = 0.0f64;
    let mut n = 0;
    for x in v {
        if x != 0.0 {
            if last != 0.0 && x.signum() != last.signum() {
                n += 1;
            }
            last = x;
        }
    }
    n
}

pub fn detect_oscillation(series: &[(f64, f64)]) -> Result<OscillationReport> {
    if series.len() < 5 {
        return Err(Error::TooFewPoints { needed: 5, got: series.len() });
    }
    if series.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(invalid("series abscissae must be strictly increasing"));
    }
    let sign_changes = strict_sign_changes(series.iter().map(|p| p.1));
    let diff_sign_changes = strict_sign_changes(series.windows(2).map(|w| w[1].1 - w[0].1));
    Ok(OscillationReport {
        sign_changes,
        diff_sign_changes,
        is_monotonic: diff_sign_changes == 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub x: f64,
    pub y: f64,
    pub index: usize,
    /// The grid maximum sits on the first or last point, so no refinement.
    pub at_boundary: bool,
}

/// Grid maximum refined by the vertex of the parabola through it and its two
/// neighbours.
pub fn locate_peak(xs: &[f64], ys: &[f64]) -> Result<Peak> {
    if xs.len() != ys.len() {
        return Err(invalid("abscissae and values differ in length"));
    }
    if xs.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: xs.len() });
    }
    let mut i = 0;
    for (k, y) in ys.iter().enumerate() {
        if *y > ys[i] {
            i = k;
        }
    }
    if i == 0 || i == xs.len() - 1 {
        return Ok(Peak { x: xs[i], y: ys[i], index: i, at_boundary: true });
    }
    let (x0, x1, x2) = (xs[i - 1], xs[i], xs[i + 1]);
    let (y0, y1, y2) = (ys[i - 1], ys[i], ys[i + 1]);
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let curvature = (d12 - d01) / (x2 - x0);
    if curvature >= 0.0 {
        return Ok(Peak { x: x1, y: y1, index: i, at_boundary: false });
    }
    // y = y1 + d01 (x - x1) + c (x - x0)(x - x1); the vertex solves y' = 0.
    let x = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    let x = x.clamp(x0, x2);
    let y = y1 + d01 * (x - x1) + curvature * (x - x0) * (x - x1);
    Ok(Peak { x, y, index: i, at_boundary: false })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakTheta {
    pub theta_star: f64,
    pub dnu_star: f64,
    pub at_boundary: bool,
}

/// Polar angle of maximal `dν/dΩ` at `φ = φ_r0`, elastic kinematics at `p_i`.
pub fn peak_theta(cfg: &ScatteringConfig, p_i: f64, theta_grid: &[f64], method: MethodChoice) -> Result<PeakTheta> {
    if theta_grid.len() < 50 {
        return Err(Error::TooFewPoints { needed: 50, got: theta_grid.len() });
    }
    let phi = cfg.state.phi_r0();
    let values: Vec<Result<f64>> = theta_grid
        .par_iter()
        .map(|&t| event_density(cfg, &Kinematics::elastic(p_i, t, phi)?, method).map(|ed| ed.value))
        .collect();
    let values = values.into_iter().collect::<Result<Vec<f64>>>()?;
    peak_of_series(theta_grid, &values)
}

fn peak_of_series(xs: &[f64], ys: &[f64]) -> Result<PeakTheta> {
    let max = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ys.iter().copied().fold(f64::INFINITY, f64::min);
    if !(max >= 1.01 * min) {
        return Err(Error::FlatDistribution(max / min));
    }
    let peak = locate_peak(xs, ys)?;
    if peak.at_boundary {
        log::warn!("peak at the edge of the theta grid ({:.4} rad)", peak.x);
    }
    Ok(PeakTheta { theta_star: peak.x, dnu_star: peak.y, at_boundary: peak.at_boundary })
}

/// Polar angle where `|A|` is largest — where the azimuthal structure is most
/// visible, as opposed to where the most electrons go.
pub fn asymmetry_peak_theta(template: &AsymmetrySpec, theta_grid: &[f64]) -> Result<PeakTheta> {
    let rows = sweep(template, SweepAxis::Theta, theta_grid)?;
    let abs = rows.into_iter().map(|r| r.map(|r| r.a.abs())).collect::<Result<Vec<f64>>>()?;
    let peak = locate_peak(theta_grid, &abs)?;
    Ok(PeakTheta { theta_star: peak.x, dnu_star: peak.y, at_boundary: peak.at_boundary })
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}
