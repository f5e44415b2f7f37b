//! Transverse beam preparations and their phase-space (Wigner) functions.
//!
//! All quantities are in Hartree atomic units: lengths in Bohr radii `a`,
//! momenta in `1/a`, with `hbar = m_e = 1`.
//!
//! A cat state is a coherent superposition of two Gaussian packets centred at
//! `±r0`, so the full separation between the packets is `2 r0`. The even and
//! odd cats differ by the relative sign of the two components.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::quadrature::{integrate_nd_panelled, oscillatory_panel_width, Integral, Interval, QuadratureSpec};
use crate::vec2::Vec2;

/// Hartree energy in eV.
pub const HARTREE_EV: f64 = 27.2114;

/// Below this `|r0| / sigma_perp` the odd cat cannot be normalized.
pub const ODD_CAT_MIN_SEPARATION: f64 = 1e-4;

const INV_PI2: f64 = 1.0 / (PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Gaussian,
    EvenCat,
    OddCat,
    IncoherentPair,
    AnisotropicGaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BeamShape {
    Gaussian { sigma_perp: f64 },
    EvenCat { sigma_perp: f64, r0: Vec2 },
    OddCat { sigma_perp: f64, r0: Vec2 },
    /// Equal-weight statistical mixture of Gaussians centred at `±r0`.
    IncoherentPair { sigma_perp: f64, r0: Vec2 },
    AnisotropicGaussian { sigma_x: f64, sigma_y: f64 },
}

/// An incident beam: its transverse shape plus the longitudinal packet size
/// and the mean longitudinal momentum. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamState {
    shape: BeamShape,
    sigma_z: f64,
    p_i: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub r: Vec2,
    pub p: Vec2,
}

impl PhasePoint {
    pub fn new(r: Vec2, p: Vec2) -> Self {
        Self { r, p }
    }

    pub fn origin() -> Self {
        Self::default()
    }
}

impl BeamState {
    pub const DEFAULT_SIGMA_Z: f64 = 10.0;
    pub const DEFAULT_P_I: f64 = 10.0;

    pub fn new(shape: BeamShape) -> Result<Self> {
        Self::with_longitudinal(shape, Self::DEFAULT_SIGMA_Z, Self::DEFAULT_P_I)
    }

    pub fn with_longitudinal(shape: BeamShape, sigma_z: f64, p_i: f64) -> Result<Self> {
        positive("sigma_z", sigma_z)?;
        positive("p_i", p_i)?;
        match shape {
            BeamShape::Gaussian { sigma_perp } => positive("sigma_perp", sigma_perp)?,
            BeamShape::EvenCat { sigma_perp, r0 } | BeamShape::IncoherentPair { sigma_perp, r0 } => {
                positive("sigma_perp", sigma_perp)?;
                finite_vec("r0", r0)?;
            }
            BeamShape::OddCat { sigma_perp, r0 } => {
                positive("sigma_perp", sigma_perp)?;
                finite_vec("r0", r0)?;
                let ratio = r0.norm() / sigma_perp;
                if ratio < ODD_CAT_MIN_SEPARATION {
                    return Err(Error::InvalidCatSeparation(ratio));
                }
                if ratio < 1.0 {
                    log::warn!("odd cat with r0/sigma_perp = {ratio:.3} < 1: packets repel and the asymmetry estimate is not meaningful");
                }
            }
            BeamShape::AnisotropicGaussian { sigma_x, sigma_y } => {
                positive("sigma_x", sigma_x)?;
                positive("sigma_y", sigma_y)?;
            }
        }
        Ok(Self { shape, sigma_z, p_i })
    }

    pub fn gaussian(sigma_perp: f64) -> Result<Self> {
        Self::new(BeamShape::Gaussian { sigma_perp })
    }

    /// Even cat with packets at `±r0 (cos phi_r0, sin phi_r0)`.
    pub fn even_cat(sigma_perp: f64, r0: f64, phi_r0: f64) -> Result<Self> {
        Self::new(BeamShape::EvenCat { sigma_perp, r0: Vec2::polar(r0, phi_r0) })
    }

    pub fn odd_cat(sigma_perp: f64, r0: f64, phi_r0: f64) -> Result<Self> {
        Self::new(BeamShape::OddCat { sigma_perp, r0: Vec2::polar(r0, phi_r0) })
    }

    pub fn incoherent_pair(sigma_perp: f64, r0: f64, phi_r0: f64) -> Result<Self> {
        Self::new(BeamShape::IncoherentPair { sigma_perp, r0: Vec2::polar(r0, phi_r0) })
    }

    pub fn anisotropic(sigma_x: f64, sigma_y: f64) -> Result<Self> {
        Self::new(BeamShape::AnisotropicGaussian { sigma_x, sigma_y })
    }

    pub fn shape(&self) -> BeamShape {
        self.shape
    }

    pub fn variant(&self) -> Variant {
        match self.shape {
            BeamShape::Gaussian { .. } => Variant::Gaussian,
            BeamShape::EvenCat { .. } => Variant::EvenCat,
            BeamShape::OddCat { .. } => Variant::OddCat,
            BeamShape::IncoherentPair { .. } => Variant::IncoherentPair,
            BeamShape::AnisotropicGaussian { .. } => Variant::AnisotropicGaussian,
        }
    }

    pub fn sigma_z(&self) -> f64 {
        self.sigma_z
    }

    pub fn p_i(&self) -> f64 {
        self.p_i
    }

    /// Isotropic transverse width; `None` for the anisotropic Gaussian.
    pub fn sigma_perp(&self) -> Option<f64> {
        match self.shape {
            BeamShape::Gaussian { sigma_perp }
            | BeamShape::EvenCat { sigma_perp, .. }
            | BeamShape::OddCat { sigma_perp, .. }
            | BeamShape::IncoherentPair { sigma_perp, .. } => Some(sigma_perp),
            BeamShape::AnisotropicGaussian { .. } => None,
        }
    }

    /// Per-axis transverse widths `(sigma_x, sigma_y)`.
    pub fn widths(&self) -> (f64, f64) {
        match self.shape {
            BeamShape::AnisotropicGaussian { sigma_x, sigma_y } => (sigma_x, sigma_y),
            _ => {
                let s = self.sigma_perp().unwrap_or(1.0);
                (s, s)
            }
        }
    }

    /// Half-separation vector; zero for single-packet states.
    pub fn r0(&self) -> Vec2 {
        match self.shape {
            BeamShape::EvenCat { r0, .. } | BeamShape::OddCat { r0, .. } | BeamShape::IncoherentPair { r0, .. } => r0,
            _ => Vec2::ZERO,
        }
    }

    /// Azimuth of `r0`; zero when there is no separation axis.
    pub fn phi_r0(&self) -> f64 {
        let r0 = self.r0();
        if r0.norm_sq() > 0.0 {
            r0.azimuth()
        } else {
            0.0
        }
    }

    pub fn is_cat(&self) -> bool {
        matches!(self.variant(), Variant::EvenCat | Variant::OddCat)
    }

    /// Same state with a different half-separation magnitude (azimuth kept).
    pub fn with_separation(&self, r0: f64) -> Result<Self> {
        let v = Vec2::polar(r0, self.phi_r0());
        let shape = match self.shape {
            BeamShape::EvenCat { sigma_perp, .. } => BeamShape::EvenCat { sigma_perp, r0: v },
            BeamShape::OddCat { sigma_perp, .. } => BeamShape::OddCat { sigma_perp, r0: v },
            BeamShape::IncoherentPair { sigma_perp, .. } => BeamShape::IncoherentPair { sigma_perp, r0: v },
            _ => return Err(Error::Unsupported("state has no packet separation")),
        };
        Self::with_longitudinal(shape, self.sigma_z, self.p_i)
    }

    /// Same state rescaled to a new transverse width, keeping `r0 / sigma_perp`
    /// (and `sigma_y / sigma_x`) fixed.
    pub fn rescaled(&self, sigma_perp: f64) -> Result<Self> {
        positive("sigma_perp", sigma_perp)?;
        let shape = match self.shape {
            BeamShape::Gaussian { .. } => BeamShape::Gaussian { sigma_perp },
            BeamShape::EvenCat { sigma_perp: s, r0 } => BeamShape::EvenCat { sigma_perp, r0: r0 * (sigma_perp / s) },
            BeamShape::OddCat { sigma_perp: s, r0 } => BeamShape::OddCat { sigma_perp, r0: r0 * (sigma_perp / s) },
            BeamShape::IncoherentPair { sigma_perp: s, r0 } => {
                BeamShape::IncoherentPair { sigma_perp, r0: r0 * (sigma_perp / s) }
            }
            BeamShape::AnisotropicGaussian { sigma_x, sigma_y } => BeamShape::AnisotropicGaussian {
                sigma_x: sigma_perp,
                sigma_y: sigma_y * sigma_perp / sigma_x,
            },
        };
        Self::with_longitudinal(shape, self.sigma_z, self.p_i)
    }

    pub fn with_p_i(&self, p_i: f64) -> Result<Self> {
        Self::with_longitudinal(self.shape, self.sigma_z, p_i)
    }

    pub fn with_sigma_z(&self, sigma_z: f64) -> Result<Self> {
        Self::with_longitudinal(self.shape, sigma_z, self.p_i)
    }

    /// Normalization denominator of the cat superposition, `1 ± exp(-r0²/2σ²)`;
    /// 1 for every other state.
    pub fn cat_normalization(&self) -> f64 {
        match self.shape {
            BeamShape::EvenCat { sigma_perp, r0 } => 1.0 + overlap(sigma_perp, r0),
            BeamShape::OddCat { sigma_perp, r0 } => -(-r0.norm_sq() / (2.0 * sigma_perp * sigma_perp)).exp_m1(),
            _ => 1.0,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn finite_vec(name: &str, v: Vec2) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("{name} must be finite")))
    }
}

fn overlap(sigma: f64, r0: Vec2) -> f64 {
    (-r0.norm_sq() / (2.0 * sigma * sigma)).exp()
}

/// Single-packet momentum wavefunction `sqrt(2σ²/π) exp(-σ² p²)`.
pub fn single_packet_amplitude(sigma: f64, p: Vec2) -> f64 {
    (2.0 * sigma * sigma / PI).sqrt() * (-sigma * sigma * p.norm_sq()).exp()
}

/// Single-packet Wigner function centred at the origin.
pub fn single_packet_wigner(sigma: f64, r: Vec2, p: Vec2) -> f64 {
    INV_PI2 * (-2.0 * sigma * sigma * p.norm_sq() - r.norm_sq() / (2.0 * sigma * sigma)).exp()
}

/// Transverse momentum-space wavefunction of a pure state.
pub fn momentum_wavefunction(state: &BeamState, p: Vec2) -> Result<Complex64> {
    match state.shape {
        BeamShape::Gaussian { sigma_perp } => Ok(Complex64::new(single_packet_amplitude(sigma_perp, p), 0.0)),
        BeamShape::EvenCat { sigma_perp, r0 } => {
            // (e^{-i r0·p} + e^{i r0·p}) = 2 cos(r0·p)
            let scale = single_packet_amplitude(sigma_perp, p) / (2.0 * state.cat_normalization()).sqrt();
            Ok(Complex64::new(2.0 * r0.dot(p).cos() * scale, 0.0))
        }
        BeamShape::OddCat { sigma_perp, r0 } => {
            // (e^{-i r0·p} - e^{i r0·p}) = -2i sin(r0·p)
            let scale = single_packet_amplitude(sigma_perp, p) / (2.0 * state.cat_normalization()).sqrt();
            Ok(Complex64::new(0.0, -2.0 * r0.dot(p).sin() * scale))
        }
        BeamShape::IncoherentPair { .. } => Err(Error::NoPureState),
        BeamShape::AnisotropicGaussian { .. } => Err(Error::Unsupported(
            "the anisotropic Gaussian is described by its Wigner function only",
        )),
    }
}

/// Wigner function `W(r, p)`, normalized so that `∫d²r d²p W = 1`.
pub fn wigner(state: &BeamState, pt: PhasePoint) -> f64 {
    let PhasePoint { r, p } = pt;
    match state.shape {
        BeamShape::Gaussian { sigma_perp } => single_packet_wigner(sigma_perp, r, p),
        BeamShape::EvenCat { sigma_perp, r0 } | BeamShape::OddCat { sigma_perp, r0 } => {
            let sign = if state.variant() == Variant::EvenCat { 1.0 } else { -1.0 };
            let direct = 0.5 * (single_packet_wigner(sigma_perp, r - r0, p) + single_packet_wigner(sigma_perp, r + r0, p));
            let interference = single_packet_wigner(sigma_perp, r, p) * (2.0 * r0.dot(p)).cos();
            (direct + sign * interference) / state.cat_normalization()
        }
        BeamShape::IncoherentPair { sigma_perp, r0 } => {
            0.5 * (single_packet_wigner(sigma_perp, r - r0, p) + single_packet_wigner(sigma_perp, r + r0, p))
        }
        BeamShape::AnisotropicGaussian { sigma_x, sigma_y } => {
            let ax = 2.0 * sigma_x * sigma_x * p.x * p.x + r.x * r.x / (2.0 * sigma_x * sigma_x);
            let ay = 2.0 * sigma_y * sigma_y * p.y * p.y + r.y * r.y / (2.0 * sigma_y * sigma_y);
            INV_PI2 * (-ax - ay).exp()
        }
    }
}

/// Nonrelativistic kinetic energy `p²/2` in keV.
pub fn kinetic_energy_kev(p: f64) -> f64 {
    0.5 * p * p * HARTREE_EV * 1e-3
}

/// Inverse of [`kinetic_energy_kev`].
pub fn momentum_from_kev(kev: f64) -> Result<f64> {
    positive("kinetic energy", kev)?;
    Ok((2.0 * kev * 1e3 / HARTREE_EV).sqrt())
}

/// Per-axis box that contains the state to `exp(-32)` in both `r` and `p`.
pub fn support_box(state: &BeamState) -> ([Interval; 2], [Interval; 2]) {
    let (sx, sy) = state.widths();
    let r0 = state.r0();
    let r = [
        Interval::symmetric(r0.x.abs() + 8.0 * sx).expect("positive width"),
        Interval::symmetric(r0.y.abs() + 8.0 * sy).expect("positive width"),
    ];
    let p = [
        Interval::symmetric(4.5 / sx).expect("positive width"),
        Interval::symmetric(4.5 / sy).expect("positive width"),
    ];
    (r, p)
}

/// Initial panel widths on the two momentum axes that resolve `cos(2 r0·p)`.
pub(crate) fn fringe_panel_widths(state: &BeamState) -> [Option<f64>; 2] {
    if state.is_cat() {
        let r0 = state.r0();
        [oscillatory_panel_width(2.0 * r0.x), oscillatory_panel_width(2.0 * r0.y)]
    } else {
        [None, None]
    }
}

/// `∫d²r d²p W` by four-dimensional cubature over [`support_box`].
pub fn wigner_normalization(state: &BeamState, spec: &QuadratureSpec) -> Result<Integral> {
    let (r, p) = support_box(state);
    let [wx, wy] = fringe_panel_widths(state);
    let r = integrate_nd_panelled(
        |v| wigner(state, PhasePoint::new(Vec2::new(v[0], v[1]), Vec2::new(v[2], v[3]))),
        &[r[0], r[1], p[0], p[1]],
        spec,
        &[None, None, wx, wy],
    )?;
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Two-dimensional `(x, p_x)` slice along the separation axis, with the
    /// perpendicular coordinate and momentum set to zero.
    #[default]
    Slice,
    /// Full four-dimensional grid over `(x, y, p_x, p_y)`.
    Full,
}

impl ScanMode {
    pub fn default_grid(self) -> usize {
        match self {
            ScanMode::Slice => 128,
            ScanMode::Full => 32,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityReport {
    pub min_value: f64,
    pub min_location: PhasePoint,
    /// Fraction of sampled grid nodes with `W < 0`.
    pub negative_volume_fraction: f64,
    pub samples: usize,
}

/// The box a negativity scan uses by default: `±(|r0| + 4σ)` in position and
/// `±4/σ` in momentum on every axis.
pub fn standard_scan_box(state: &BeamState) -> ([Interval; 2], [Interval; 2]) {
    let (sx, sy) = state.widths();
    let smax = sx.max(sy);
    let half_r = state.r0().norm() + 4.0 * smax;
    let half_p = 4.0 / sx.min(sy);
    let r = Interval::symmetric(half_r).expect("positive width");
    let p = Interval::symmetric(half_p).expect("positive width");
    ([r, r], [p, p])
}

fn grid_nodes(iv: Interval, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|i| iv.lo() + iv.width() * (i as f64 / n as f64))
        .collect()
}

/// Point of the phase-space grid used by scans and exports. In slice mode
/// `(u, _, pu, _)` are coordinates along the separation axis.
fn grid_point(state: &BeamState, mode: ScanMode, v: [f64; 4]) -> PhasePoint {
    match mode {
        ScanMode::Slice => {
            let axis = Vec2::polar(1.0, state.phi_r0());
            PhasePoint::new(axis * v[0], axis * v[2])
        }
        ScanMode::Full => PhasePoint::new(Vec2::new(v[0], v[1]), Vec2::new(v[2], v[3])),
    }
}

fn check_scan_box(state: &BeamState, r_box: &[Interval; 2], p_box: &[Interval; 2], grid_n: usize) -> Result<()> {
    if grid_n < 16 {
        return Err(invalid(format!("grid_n must be at least 16, got {grid_n}")));
    }
    let (sx, sy) = state.widths();
    let (rmin, pmin) = (4.0 * sx.max(sy), 4.0 / sx.min(sy));
    let covers = |iv: &Interval, h: f64| iv.lo() <= -h * (1.0 - 1e-12) && iv.hi() >= h * (1.0 - 1e-12);
    if !r_box.iter().all(|iv| covers(iv, rmin)) || !p_box.iter().all(|iv| covers(iv, pmin)) {
        return Err(invalid("scan box must cover ±4σ in position and ±4/σ in momentum"));
    }
    Ok(())
}

/// Exhaustive grid scan for negative values of the Wigner function.
///
/// Each axis is cut into `grid_n` cells and sampled at its `grid_n + 1` nodes,
/// so a symmetric box always contains the phase-space origin.
pub fn negativity_scan(
    state: &BeamState,
    r_box: [Interval; 2],
    p_box: [Interval; 2],
    grid_n: usize,
    mode: ScanMode,
) -> Result<NegativityReport> {
    check_scan_box(state, &r_box, &p_box, grid_n)?;
    let xs = grid_nodes(r_box[0], grid_n);
    let pxs = grid_nodes(p_box[0], grid_n);
    let (ys, pys) = match mode {
        ScanMode::Slice => (vec![0.0], vec![0.0]),
        ScanMode::Full => (grid_nodes(r_box[1], grid_n), grid_nodes(p_box[1], grid_n)),
    };

    // One slab per x node, reduced in index order afterwards.
    let slabs: Vec<(f64, PhasePoint, usize)> = xs
        .par_iter()
        .map(|&x| {
            let mut best = (f64::INFINITY, PhasePoint::origin(), 0usize);
            for &y in &ys {
                for &px in &pxs {
                    for &py in &pys {
                        let pt = grid_point(state, mode, [x, y, px, py]);
                        let w = wigner(state, pt);
                        if w < 0.0 {
                            best.2 += 1;
                        }
                        if w < best.0 {
                            best.0 = w;
                            best.1 = pt;
                        }
                    }
                }
            }
            best
        })
        .collect();

    let samples = xs.len() * ys.len() * pxs.len() * pys.len();
    let mut min_value = f64::INFINITY;
    let mut min_location = PhasePoint::origin();
    let mut negative = 0;
    for (w, pt, n) in slabs {
        negative += n;
        if w < min_value {
            min_value = w;
            min_location = pt;
        }
    }
    Ok(NegativityReport {
        min_value,
        min_location,
        negative_volume_fraction: negative as f64 / samples as f64,
        samples,
    })
}

/// Writes the Wigner function on a grid as CSV: `x,px,w` for slices and
/// `x,y,px,py,w` in full mode, row-major with the last column varying fastest.
pub fn write_wigner_csv<W: Write>(
    state: &BeamState,
    r_box: [Interval; 2],
    p_box: [Interval; 2],
    grid_n: usize,
    mode: ScanMode,
    mut out: W,
) -> Result<()> {
    check_scan_box(state, &r_box, &p_box, grid_n)?;
    let xs = grid_nodes(r_box[0], grid_n);
    let pxs = grid_nodes(p_box[0], grid_n);
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match mode {
        ScanMode::Slice => {
            writeln!(out, "x,px,w").map_err(io)?;
            for &x in &xs {
                for &px in &pxs {
                    let w = wigner(state, grid_point(state, mode, [x, 0.0, px, 0.0]));
                    writeln!(out, "{},{},{}", crate::sci(x), crate::sci(px), crate::sci(w)).map_err(io)?;
                }
            }
        }
        ScanMode::Full => {
            let ys = grid_nodes(r_box[1], grid_n);
            let pys = grid_nodes(p_box[1], grid_n);
            writeln!(out, "x,y,px,py,w").map_err(io)?;
            for &x in &xs {
                for &y in &ys {
                    for &px in &pxs {
                        for &py in &pys {
                            let w = wigner(state, grid_point(state, mode, [x, y, px, py]));
                            writeln!(
                                out,
                                "{},{},{},{},{}",
                                crate::sci(x),
                                crate::sci(y),
                                crate::sci(px),
                                crate::sci(py),
                                crate::sci(w)
                            )
                            .map_err(io)?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
