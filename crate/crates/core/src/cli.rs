//! The `catscatter` command line: flag parsing, the five subcommands and
//! their CSV/JSON output.
//!
//! Every run with `--out PATH` also writes `PATH.config.json`, the fully
//! resolved [`RunConfig`]; `catscatter --config PATH.config.json` repeats the
//! run and reproduces the output byte for byte.
//!
//! CSV schemas (fixed column order, numbers with 17 significant digits):
//!
//! * `wigner`: `x,px,w` (slice) or `x,y,px,py,w` (full);
//! * `scatter`: `theta_deg,phi_deg,dnu,dsigma,err_est,method`, with `dnu`
//!   left empty for a wide target, where only the cross section is defined;
//! * `asymmetry`, `sweep`: `axis_value,theta_deg,A,metric`.
//!
//! Exit codes: 0 success, 1 input error, 2 validation failure.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::analysis::{azimuthal_asymmetry, sweep, AsymmetrySpec, Metric, SweepAxis};
use crate::beam::{
    momentum_from_kev, negativity_scan, standard_scan_box, wigner, write_wigner_csv, BeamShape, BeamState,
    PhasePoint, ScanMode,
};
use crate::error::{invalid, Error, Result};
use crate::scattering::{
    cross_section, event_density, event_density_cat_closed, event_density_cat_quadrature, event_density_gaussian,
    event_density_general, validity_check, MethodChoice, ScatteringConfig, Tolerances,
};
use crate::sci;
use crate::target::{Kinematics, TargetProfile};
use crate::vec2::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Wigner,
    Scatter,
    Asymmetry,
    Sweep,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum StateKind {
    Gaussian,
    EvenCat,
    #[default]
    OddCat,
    Mixture,
    Aniso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MetricArg {
    #[default]
    ParaPerp,
    Minmax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    #[default]
    Auto,
    General4d,
    Quad2d,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    #[default]
    Slice,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AxisArg {
    R0,
    SigmaPerp,
    Theta,
    Pi,
    AspectRatio,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::ParaPerp => Metric::ParaPerp,
            MetricArg::Minmax => Metric::MinMax,
        }
    }
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::General4d => MethodChoice::General4d,
            MethodArg::Quad2d => MethodChoice::Quadrature2d,
            MethodArg::Closed => MethodChoice::ClosedForm,
        }
    }
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::R0 => SweepAxis::R0,
            AxisArg::SigmaPerp => SweepAxis::SigmaPerp,
            AxisArg::Theta => SweepAxis::Theta,
            AxisArg::Pi => SweepAxis::PI,
            AxisArg::AspectRatio => SweepAxis::AspectRatio,
        }
    }
}

impl From<ModeArg> for ScanMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Slice => ScanMode::Slice,
            ModeArg::Full => ScanMode::Full,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "catscatter", version, about = "Scattering of structured electron packets off hydrogen")]
struct Cli {
    /// Repeat a run from the JSON sidecar of an earlier one.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output path for a run repeated with --config.
    #[arg(long = "out", value_name = "PATH", requires = "config")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Export the Wigner function on a grid (JSON: negativity summary).
    Wigner(Flags),
    /// Event density and cross section over a theta x phi grid.
    Scatter(Flags),
    /// Azimuthal asymmetry at each theta.
    Asymmetry(Flags),
    /// Asymmetry as one parameter is varied.
    Sweep(Flags),
    /// Cross-check the evaluation methods and report the validity regime.
    Validate(Flags),
}

/// Lengths in Bohr radii, momenta in inverse Bohr radii, angles in degrees.
#[derive(Args, Debug, Clone)]
struct Flags {
    #[arg(long, value_enum, default_value_t)]
    state: StateKind,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    sigma_perp: f64,
    /// Anisotropic Gaussian width along x [default: --sigma-perp].
    #[arg(long, allow_negative_numbers = true)]
    sigma_x: Option<f64>,
    /// Anisotropic Gaussian width along y [default: --sigma-perp].
    #[arg(long, allow_negative_numbers = true)]
    sigma_y: Option<f64>,
    /// Half-separation of the two packets.
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    r0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi_r0: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = BeamState::DEFAULT_SIGMA_Z)]
    sigma_z: f64,
    /// Incident momentum [default: 10].
    #[arg(long = "pi", allow_negative_numbers = true, conflicts_with = "ev")]
    p_i: Option<f64>,
    /// Final momentum [default: --pi].
    #[arg(long = "pf", allow_negative_numbers = true)]
    p_f: Option<f64>,
    /// Incident kinetic energy in keV, instead of --pi.
    #[arg(long, allow_negative_numbers = true)]
    ev: Option<f64>,
    /// Gaussian target width; without it the target is wide.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "wide")]
    sigma_t: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    b0x: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    b0y: f64,
    /// Infinitely wide target (the default).
    #[arg(long)]
    wide: bool,
    /// Polar angle(s): A or A:B:N.
    #[arg(long, default_value = "10")]
    theta: String,
    /// Azimuth(s) for `scatter`: A or A:B:N [default: --phi-r0].
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Number of equally spaced azimuths: full circle for `scatter`, one
    /// period for the minmax metric.
    #[arg(long)]
    phi_grid: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    metric: MetricArg,
    #[arg(long, value_enum, default_value_t)]
    method: MethodArg,
    /// Relative quadrature tolerance for every dimension.
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Number of incident electrons.
    #[arg(long, default_value_t = 1)]
    ne: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Grid cells per axis for `wigner` [default: 128 slice, 32 full].
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    mode: ModeArg,
    /// Swept parameter for `sweep`.
    #[arg(long, value_enum)]
    axis: Option<AxisArg>,
    /// Sweep values: A:B:N or a comma-separated list (theta in degrees).
    #[arg(long)]
    values: Option<String>,
}

/// Fully resolved parameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub state: StateKind,
    pub sigma_perp: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub r0: f64,
    pub phi_r0_deg: f64,
    pub sigma_z: f64,
    pub p_i: f64,
    pub p_f: f64,
    pub wide: bool,
    pub sigma_t: Option<f64>,
    pub b0x: f64,
    pub b0y: f64,
    pub theta_deg: Vec<f64>,
    pub phi_deg: Vec<f64>,
    pub phi_grid: usize,
    pub metric: MetricArg,
    pub method: MethodArg,
    pub tol: Option<f64>,
    pub n_e: u64,
    pub grid: usize,
    pub mode: ModeArg,
    pub axis: Option<AxisArg>,
    pub values: Vec<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

/// `A` or `A:B:N` (N points from A to B inclusive).
fn parse_grid(flag: &str, s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| invalid(format!("--{flag}: cannot parse '{t}' as a number")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a] => Ok(vec![num(a)?]),
        [a, b, n] => {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| invalid(format!("--{flag}: cannot parse '{n}' as a point count")))?;
            if n < 1 {
                return Err(invalid(format!("--{flag}: point count must be at least 1")));
            }
            Ok(crate::analysis::linspace(num(a)?, num(b)?, n))
        }
        _ => Err(invalid(format!("--{flag}: expected A or A:B:N, got '{s}'"))),
    }
}

fn parse_values(s: &str) -> Result<Vec<f64>> {
    if s.contains(':') {
        return parse_grid("values", s);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| invalid(format!("--values: cannot parse '{t}' as a number")))
        })
        .collect()
}

impl RunConfig {
    fn resolve(command: CommandKind, f: Flags) -> Result<Self> {
        let p_i = match (f.p_i, f.ev) {
            (Some(p), _) => p,
            (None, Some(kev)) => momentum_from_kev(kev)?,
            (None, None) => BeamState::DEFAULT_P_I,
        };
        let theta_deg = parse_grid("theta", &f.theta)?;
        let phi_deg = match (&f.phi, f.phi_grid) {
            (Some(s), _) => parse_grid("phi", s)?,
            (None, Some(n)) if command == CommandKind::Scatter => {
                if n < 1 {
                    return Err(invalid("--phi-grid: must be at least 1"));
                }
                (0..n).map(|k| 360.0 * k as f64 / n as f64).collect()
            }
            _ => vec![f.phi_r0],
        };
        let mode = f.mode;
        let values = match &f.values {
            Some(s) => parse_values(s)?,
            None => vec![],
        };
        if command == CommandKind::Sweep && (f.axis.is_none() || values.is_empty()) {
            return Err(invalid("sweep needs --axis and --values"));
        }
        let cfg = Self {
            command,
            state: f.state,
            sigma_perp: f.sigma_perp,
            sigma_x: f.sigma_x.unwrap_or(f.sigma_perp),
            sigma_y: f.sigma_y.unwrap_or(f.sigma_perp),
            r0: f.r0,
            phi_r0_deg: f.phi_r0,
            sigma_z: f.sigma_z,
            p_i,
            p_f: f.p_f.unwrap_or(p_i),
            wide: f.sigma_t.is_none(),
            sigma_t: f.sigma_t,
            b0x: f.b0x,
            b0y: f.b0y,
            theta_deg,
            phi_deg,
            phi_grid: f.phi_grid.unwrap_or(16),
            metric: f.metric,
            method: f.method,
            tol: f.tol,
            n_e: f.ne,
            grid: f.grid.unwrap_or(ScanMode::from(mode).default_grid()),
            mode,
            axis: f.axis,
            values,
            out: f.out,
            format: f.format,
        };
        cfg.check()?;
        Ok(cfg)
    }

    /// Builds every library object once, so bad input fails before any work.
    fn check(&self) -> Result<()> {
        let sc = self.scattering()?;
        for t in &self.theta_deg {
            self.kinematics(*t, self.phi_r0_deg)?;
        }
        for p in &self.phi_deg {
            if !p.is_finite() {
                return Err(invalid("--phi: must be finite"));
            }
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(invalid(format!("--tol: must lie in (0, 1), got {tol}")));
            }
        }
        if self.command == CommandKind::Asymmetry || self.command == CommandKind::Sweep {
            if self.phi_grid < 8 {
                return Err(invalid("--phi-grid: the asymmetry scan needs at least 8 azimuths"));
            }
        }
        sc.clone().with_n_e(self.n_e).map_err(|e| prefixed("ne", e))?;
        Ok(())
    }

    pub fn beam(&self) -> Result<BeamState> {
        let r0 = Vec2::polar(self.r0, self.phi_r0_deg.to_radians());
        let s = self.sigma_perp;
        let shape = match self.state {
            StateKind::Gaussian => BeamShape::Gaussian { sigma_perp: s },
            StateKind::EvenCat => BeamShape::EvenCat { sigma_perp: s, r0 },
            StateKind::OddCat => BeamShape::OddCat { sigma_perp: s, r0 },
            StateKind::Mixture => BeamShape::IncoherentPair { sigma_perp: s, r0 },
            StateKind::Aniso => BeamShape::AnisotropicGaussian { sigma_x: self.sigma_x, sigma_y: self.sigma_y },
        };
        BeamState::with_longitudinal(shape, self.sigma_z, self.p_i).map_err(|e| prefixed("state", e))
    }

    pub fn target(&self) -> Result<TargetProfile> {
        match self.sigma_t {
            None => Ok(TargetProfile::wide()),
            Some(st) => TargetProfile::gaussian(st, Vec2::new(self.b0x, self.b0y)).map_err(|e| prefixed("sigma-t", e)),
        }
    }

    pub fn scattering(&self) -> Result<ScatteringConfig> {
        let quad = self.tol.map(Tolerances::uniform).unwrap_or_default();
        Ok(ScatteringConfig::new(self.beam()?, self.target()?)
            .with_tolerances(quad)
            .with_n_e(self.n_e.max(1))?)
    }

    fn kinematics(&self, theta_deg: f64, phi_deg: f64) -> Result<Kinematics> {
        Kinematics::new(self.p_i, self.p_f, theta_deg.to_radians(), phi_deg.to_radians())
            .map_err(|e| prefixed("theta", e))
    }
}

fn prefixed(flag: &str, e: Error) -> Error {
    match e {
        Error::InvalidParameter(m) => invalid(format!("--{flag}: {m}")),
        other => other,
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".config.json");
    PathBuf::from(s)
}

/// Parses `args` (program name first), runs, and returns the exit code.
/// Output goes to `--out` when given, to `stdout` otherwise.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let cfg = match load(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match execute(&cfg) {
        Ok((text, passed)) => {
            if let Err(e) = emit(&cfg, &text, stdout) {
                eprintln!("error: {e}");
                return 1;
            }
            if passed {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load(cli: Cli) -> Result<RunConfig> {
    match (cli.config, cli.command) {
        (Some(_), Some(_)) => Err(invalid("--config replaces the subcommand; give one or the other")),
        (None, None) => Err(invalid("missing subcommand (wigner, scatter, asymmetry, sweep, validate)")),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut cfg: RunConfig =
                serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            if cli.out.is_some() {
                cfg.out = cli.out;
            }
            cfg.check()?;
            Ok(cfg)
        }
        (None, Some(cmd)) => {
            let (kind, flags) = match cmd {
                Cmd::Wigner(f) => (CommandKind::Wigner, f),
                Cmd::Scatter(f) => (CommandKind::Scatter, f),
                Cmd::Asymmetry(f) => (CommandKind::Asymmetry, f),
                Cmd::Sweep(f) => (CommandKind::Sweep, f),
                Cmd::Validate(f) => (CommandKind::Validate, f),
            };
            RunConfig::resolve(kind, flags)
        }
    }
}

fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let side = serde_json::to_string_pretty(cfg).map_err(|e| Error::Io(e.to_string()))?;
            std::fs::write(sidecar_path(path), side + "\n").map_err(io)?;
        }
        None => stdout.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(())
}

/// Runs a resolved configuration; returns the output text and whether every
/// check passed (always true outside `validate`).
pub fn execute(cfg: &RunConfig) -> Result<(String, bool)> {
    if cfg.command != CommandKind::Wigner && cfg.command != CommandKind::Validate {
        report_validity(cfg)?;
    }
    match cfg.command {
        CommandKind::Wigner => wigner_cmd(cfg).map(|t| (t, true)),
        CommandKind::Scatter => scatter_cmd(cfg).map(|t| (t, true)),
        CommandKind::Asymmetry => asymmetry_cmd(cfg).map(|t| (t, true)),
        CommandKind::Sweep => sweep_cmd(cfg).map(|t| (t, true)),
        CommandKind::Validate => validate_cmd(cfg),
    }
}

fn report_validity(cfg: &RunConfig) -> Result<()> {
    let sc = cfg.scattering()?;
    let a = sc.amplitude.hydrogen_radius().unwrap_or(1.0);
    for item in validity_check(&sc.state, &sc.target, a).iter().filter(|i| !i.satisfied) {
        eprintln!("warning: {} not satisfied (margin {:.3})", item.condition, item.margin);
    }
    if (cfg.p_f - cfg.p_i).abs() > 1e-9 * cfg.p_i {
        eprintln!("warning: p_f = {} differs from p_i = {}; the formulas assume elastic scattering", cfg.p_f, cfg.p_i);
    }
    Ok(())
}

fn json_text(v: &serde_json::Value) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Error::Io(e.to_string()))
}

fn wigner_cmd(cfg: &RunConfig) -> Result<String> {
    let state = cfg.beam()?;
    let (r_box, p_box) = standard_scan_box(&state);
    let mode = ScanMode::from(cfg.mode);
    match cfg.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_wigner_csv(&state, r_box, p_box, cfg.grid, mode, &mut buf)?;
            String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
        }
        Format::Json => {
            let rep = negativity_scan(&state, r_box, p_box, cfg.grid, mode)?;
            let loc = rep.min_location;
            json_text(&json!({
                "min_value": rep.min_value,
                "min_location": {"x": loc.r.x, "y": loc.r.y, "px": loc.p.x, "py": loc.p.y},
                "negative_volume_fraction": rep.negative_volume_fraction,
                "samples": rep.samples,
                "w_origin": wigner(&state, PhasePoint::origin()),
            }))
        }
    }
}

fn scatter_cmd(cfg: &RunConfig) -> Result<String> {
    use rayon::prelude::*;
    let sc = cfg.scattering()?;
    let method = MethodChoice::from(cfg.method);
    let points: Vec<(f64, f64)> = cfg
        .theta_deg
        .iter()
        .flat_map(|&t| cfg.phi_deg.iter().map(move |&p| (t, p)))
        .collect();
    let results: Vec<Result<(f64, f64, crate::scattering::EventDensity, f64)>> = points
        .par_iter()
        .map(|&(t, p)| {
            let ed = event_density(&sc, &cfg.kinematics(t, p)?, method)?;
            Ok((t, p, ed, cross_section(&ed, sc.n_e)?))
        })
        .collect();
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    match cfg.format {
        Format::Csv => {
            let mut s = String::from("theta_deg,phi_deg,dnu,dsigma,err_est,method\n");
            for (t, p, ed, ds) in rows {
                let dnu = if ed.wide_limit { String::new() } else { sci(ed.value) };
                let _ = writeln!(s, "{},{},{},{},{},{}", sci(t), sci(p), dnu, sci(ds), sci(ed.err_est), ed.method.as_str());
            }
            Ok(s)
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .into_iter()
                .map(|(t, p, ed, ds)| {
                    json!({
                        "theta_deg": t,
                        "phi_deg": p,
                        "dnu": if ed.wide_limit { None } else { Some(ed.value) },
                        "dsigma": ds,
                        "err_est": ed.err_est,
                        "method": ed.method.as_str(),
                    })
                })
                .collect();
            json_text(&json!({ "rows": rows }))
        }
    }
}

fn asymmetry_template(cfg: &RunConfig, theta_deg: f64) -> Result<AsymmetrySpec> {
    Ok(AsymmetrySpec::new(cfg.scattering()?, cfg.kinematics(theta_deg, cfg.phi_r0_deg)?)
        .with_metric(cfg.metric.into())
        .with_phi_grid(cfg.phi_grid)
        .with_method(cfg.method.into()))
}

struct AsymRow {
    axis_value: Option<f64>,
    theta_deg: f64,
    result: Result<crate::analysis::AsymmetryResult>,
}

fn asymmetry_text(cfg: &RunConfig, rows: &[AsymRow]) -> Result<String> {
    let metric = Metric::from(cfg.metric).as_str();
    match cfg.format {
        Format::Csv => {
            let mut s = String::from("axis_value,theta_deg,A,metric\n");
            for r in rows {
                let axis = r.axis_value.map(sci).unwrap_or_default();
                let a = r.result.as_ref().map(|x| sci(x.a)).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{}", axis, sci(r.theta_deg), a, metric);
            }
            Ok(s)
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| match &r.result {
                    Ok(x) => json!({
                        "axis_value": r.axis_value,
                        "theta_deg": r.theta_deg,
                        "A": x.a,
                        "metric": metric,
                        "phi_scan": x.phi_scan.iter().map(|(p, v)| json!({"phi_deg": p.to_degrees(), "dnu": v})).collect::<Vec<_>>(),
                    }),
                    Err(e) => json!({
                        "axis_value": r.axis_value,
                        "theta_deg": r.theta_deg,
                        "A": null,
                        "metric": metric,
                        "error": e.to_string(),
                    }),
                })
                .collect();
            json_text(&json!({ "axis": cfg.axis.map(|a| SweepAxis::from(a).as_str()), "rows": rows }))
        }
    }
}

fn asymmetry_cmd(cfg: &RunConfig) -> Result<String> {
    let mut rows = Vec::new();
    for &t in &cfg.theta_deg {
        let result = azimuthal_asymmetry(&asymmetry_template(cfg, t)?);
        if let Err(e) = &result {
            return Err(e.clone());
        }
        rows.push(AsymRow { axis_value: None, theta_deg: t, result });
    }
    asymmetry_text(cfg, &rows)
}

fn sweep_cmd(cfg: &RunConfig) -> Result<String> {
    let axis = SweepAxis::from(cfg.axis.ok_or_else(|| invalid("sweep needs --axis"))?);
    let mut rows = Vec::new();
    let thetas = if axis == SweepAxis::Theta { &cfg.theta_deg[..1] } else { &cfg.theta_deg[..] };
    for &t in thetas {
        let template = asymmetry_template(cfg, t)?;
        let values: Vec<f64> = if axis == SweepAxis::Theta {
            cfg.values.iter().map(|v| v.to_radians()).collect()
        } else {
            cfg.values.clone()
        };
        for (i, result) in sweep(&template, axis, &values)?.into_iter().enumerate() {
            if let Err(e) = &result {
                eprintln!("warning: {}={}: {e}", axis.as_str(), cfg.values[i]);
            }
            let theta_deg = if axis == SweepAxis::Theta { cfg.values[i] } else { t };
            rows.push(AsymRow { axis_value: Some(cfg.values[i]), theta_deg, result });
        }
    }
    asymmetry_text(cfg, &rows)
}

struct Check {
    name: String,
    measured: f64,
    bound: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Oracle cross-checks between independent evaluation routes, followed by
/// the validity report of the configured state.
fn validate_cmd(cfg: &RunConfig) -> Result<(String, bool)> {
    let quad = cfg.tol.map(Tolerances::uniform).unwrap_or_default();
    let mk = |state: BeamState, target: TargetProfile| ScatteringConfig::new(state, target).with_tolerances(quad);
    let deg = |d: f64| d.to_radians();
    let wide = TargetProfile::wide();
    let mut checks: Vec<Check> = Vec::new();
    let inv_pi2 = 1.0 / (PI * PI);

    for (name, state, expected) in [
        ("wigner_origin_gaussian", BeamState::gaussian(2.0)?, inv_pi2),
        ("wigner_origin_odd_cat", BeamState::odd_cat(2.0, 2.0, 0.0)?, -inv_pi2),
        ("wigner_origin_even_cat", BeamState::even_cat(2.0, 2.0, 0.0)?, inv_pi2),
    ] {
        let w = wigner(&state, PhasePoint::origin());
        checks.push(Check { name: name.into(), measured: (w - expected).abs(), bound: 1e-12 });
    }

    for (label, make) in [
        ("odd_cat", BeamState::odd_cat as fn(f64, f64, f64) -> Result<BeamState>),
        ("even_cat", BeamState::even_cat),
    ] {
        for (r0, theta) in [(2.0, 5.0), (4.0, 10.0), (6.0, 20.0)] {
            let sc = mk(make(2.0, r0, 0.0)?, wide);
            let kin = Kinematics::elastic(10.0, deg(theta), 0.3)?;
            let c = event_density_cat_closed(&sc, &kin)?.value;
            let q = event_density_cat_quadrature(&sc, &kin)?.value;
            checks.push(Check {
                name: format!("closed_vs_quad2d_{label}_r0={r0}_theta={theta}"),
                measured: rel(c, q),
                bound: 1e-6,
            });
        }
    }

    let kin = Kinematics::elastic(10.0, deg(10.0), 0.0)?;
    let finite = TargetProfile::gaussian(20.0, Vec2::ZERO)?;
    {
        let sc = mk(BeamState::even_cat(2.0, 4.0, 0.0)?, finite);
        let g = event_density_general(&sc, &kin)?.value;
        let q = event_density_cat_quadrature(&sc, &kin)?.value;
        checks.push(Check { name: "general4d_vs_quad2d_even_cat".into(), measured: rel(g, q), bound: 1e-3 });
    }
    for target in [wide, TargetProfile::gaussian(7.0, Vec2::new(1.0, 2.0))?] {
        let g = event_density_gaussian(&mk(BeamState::gaussian(2.0)?, target), &kin)?.value;
        let c = event_density_cat_closed(&mk(BeamState::even_cat(2.0, 0.0, 0.0)?, target), &kin)?.value;
        let label = if target.is_wide() { "wide" } else { "finite" };
        checks.push(Check { name: format!("gaussian_vs_even_cat_r0=0_{label}"), measured: rel(g, c), bound: 1e-8 });
    }
    {
        let b0 = Vec2::new(1.0, 0.5);
        let r0 = Vec2::new(3.0, 0.0);
        let pair = event_density_cat_quadrature(
            &mk(BeamState::incoherent_pair(2.0, 3.0, 0.0)?, TargetProfile::gaussian(6.0, b0)?),
            &kin,
        )?
        .value;
        let g = |b: Vec2| -> Result<f64> {
            Ok(event_density_gaussian(&mk(BeamState::gaussian(2.0)?, TargetProfile::gaussian(6.0, b)?), &kin)?.value)
        };
        let mean = 0.5 * (g(b0 - r0)? + g(b0 + r0)?);
        checks.push(Check { name: "mixture_vs_shifted_gaussians".into(), measured: rel(pair, mean), bound: 1e-4 });
    }
    {
        let sc = mk(BeamState::gaussian(2.0)?, TargetProfile::gaussian(5.0, Vec2::new(3.0, 0.0))?);
        let a = event_density_gaussian(&sc, &kin)?.value;
        let b = event_density_gaussian(&sc, &kin.with_phi(deg(137.0)))?.value;
        checks.push(Check { name: "gaussian_phi_independence".into(), measured: rel(a, b), bound: 1e-8 });
    }
    {
        let sc = mk(BeamState::even_cat(2.0, 3.0, 0.5)?, wide);
        let a = event_density_cat_quadrature(&sc, &kin.with_phi(0.9))?.value;
        let b = event_density_cat_quadrature(&sc, &kin.with_phi(0.9 + PI))?.value;
        checks.push(Check { name: "cat_pi_periodicity".into(), measured: rel(a, b), bound: 1e-8 });
    }

    let mut out = String::new();
    let mut passed = true;
    for c in &checks {
        let ok = c.measured <= c.bound;
        passed &= ok;
        let _ = writeln!(
            out,
            "{} {} measured={} bound={}",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            sci(c.measured),
            sci(c.bound)
        );
    }
    let sc = cfg.scattering()?;
    let a = sc.amplitude.hydrogen_radius().unwrap_or(1.0);
    for item in validity_check(&sc.state, &sc.target, a) {
        let _ = writeln!(
            out,
            "{} validity: {} margin={}",
            if item.satisfied { "OK" } else { "WARN" },
            item.condition,
            sci(item.margin)
        );
    }
    if cfg.format == Format::Json {
        let v = json!({
            "passed": passed,
            "checks": checks.iter().map(|c| json!({
                "name": c.name, "measured": c.measured, "bound": c.bound, "pass": c.measured <= c.bound
            })).collect::<Vec<_>>(),
        });
        return Ok((json_text(&v)?, passed));
    }
    Ok((out, passed))
}
