//! Deterministic adaptive quadrature.
//!
//! One-dimensional integrals use a globally adaptive 15-point Gauss–Kronrod
//! rule with the 7-point Gauss rule embedded for error estimation. Semi-infinite
//! intervals are mapped onto `[0, 1)` with `x = lo + t / (1 - t)`.
//!
//! Two-dimensional boxes are integrated as iterated one-dimensional integrals,
//! which keeps the Kronrod accuracy that the cross-method comparisons need.
//! Four-dimensional boxes use the degree-7/degree-5 embedded Genz–Malik
//! cubature with bisection of the worst region along its roughest axis.
//!
//! Nothing here is randomized and every reduction runs in a fixed order, so two
//! calls with the same inputs return bit-identical results.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("no convergence after {subdivisions} subdivisions (value {value:e}, error estimate {err_est:e})")]
    NonConvergence {
        value: f64,
        err_est: f64,
        subdivisions: usize,
    },
    #[error("integrand returned {value} at {at:?}")]
    NonFiniteIntegrand { at: Vec<f64>, value: f64 },
    #[error("unsupported dimension {0}; only 2 and 4 are implemented")]
    UnsupportedDimension(usize),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(&'static str),
}

/// Integration interval. `hi` may be `f64::INFINITY`; `lo` must be finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, QuadError> {
        let ok = lo.is_finite() && (hi.is_finite() || hi == f64::INFINITY) && lo < hi;
        if ok {
            Ok(Self { lo, hi })
        } else {
            Err(QuadError::InvalidInterval { lo, hi })
        }
    }

    pub fn semi_infinite(lo: f64) -> Result<Self, QuadError> {
        Self::new(lo, f64::INFINITY)
    }

    /// `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64) -> Result<Self, QuadError> {
        Self::new(-half_width, half_width)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound on the number of bisections performed by one adaptive run.
    pub max_subdivisions: usize,
    /// Panels narrower than this are never split again.
    pub min_panel_width: f64,
}

impl QuadratureSpec {
    pub fn new(
        rel_tol: f64,
        abs_tol: f64,
        max_subdivisions: usize,
        min_panel_width: f64,
    ) -> Result<Self, QuadError> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            min_panel_width,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(QuadError::InvalidSpec("rel_tol must be positive"));
        }
        if !(self.abs_tol >= 0.0) || !self.abs_tol.is_finite() {
            return Err(QuadError::InvalidSpec("abs_tol must be non-negative"));
        }
        if self.max_subdivisions < 1 {
            return Err(QuadError::InvalidSpec("max_subdivisions must be at least 1"));
        }
        if !(self.min_panel_width >= 0.0) {
            return Err(QuadError::InvalidSpec("min_panel_width must be non-negative"));
        }
        Ok(())
    }

    pub fn one_d() -> Self {
        Self {
            rel_tol: 1e-11,
            abs_tol: 0.0,
            max_subdivisions: 4000,
            min_panel_width: 1e-13,
        }
    }

    pub fn two_d() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_subdivisions: 4000,
            min_panel_width: 1e-12,
        }
    }

    pub fn four_d() -> Self {
        Self {
            rel_tol: 1e-5,
            abs_tol: 0.0,
            max_subdivisions: 400_000,
            min_panel_width: 1e-9,
        }
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::one_d()
    }
}

/// Value of an integral together with the engine's own error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub err_est: f64,
}

/// Largest panel width allowed on an axis that carries a `cos(omega * x)`
/// factor: an eighth of a period, i.e. `pi / (4 * omega)`.
pub fn oscillatory_panel_width(omega: f64) -> Option<f64> {
    (omega.abs() > 0.0).then(|| std::f64::consts::PI / (4.0 * omega.abs()))
}

pub fn integrate_1d<F>(mut f: F, domain: Interval, spec: &QuadratureSpec) -> Result<Integral, QuadError>
where
    F: FnMut(f64) -> f64,
{
    integrate_1d_panelled(&mut f, domain, spec, None)
}

/// Like [`integrate_1d`], but the finite domain is first cut into equal panels
/// no wider than `max_panel_width`.
pub fn integrate_1d_panelled<F>(
    mut f: F,
    domain: Interval,
    spec: &QuadratureSpec,
    max_panel_width: Option<f64>,
) -> Result<Integral, QuadError>
where
    F: FnMut(f64) -> f64,
{
    spec.validate()?;
    if domain.is_finite() {
        let n = initial_panel_count(domain.width(), max_panel_width);
        adaptive_1d(|x| checked(f(x), &[x]), domain.lo, domain.hi, n, spec)
    } else {
        let lo = domain.lo;
        adaptive_1d(
            |t| {
                let s = 1.0 - t;
                let x = lo + t / s;
                let v = f(x);
                checked(v, &[x]).map(|v| v / (s * s))
            },
            0.0,
            1.0,
            1,
            spec,
        )
    }
}

/// Integrates over a finite box of dimension 2 or 4.
pub fn integrate_nd<F>(f: F, bounds: &[Interval], spec: &QuadratureSpec) -> Result<Integral, QuadError>
where
    F: FnMut(&[f64]) -> f64,
{
    integrate_nd_panelled(f, bounds, spec, &[])
}

/// Like [`integrate_nd`], with an optional maximum initial panel width per
/// axis (missing entries mean "no constraint").
pub fn integrate_nd_panelled<F>(
    mut f: F,
    bounds: &[Interval],
    spec: &QuadratureSpec,
    max_panel_width: &[Option<f64>],
) -> Result<Integral, QuadError>
where
    F: FnMut(&[f64]) -> f64,
{
    spec.validate()?;
    if let Some(iv) = bounds.iter().find(|iv| !iv.is_finite()) {
        return Err(QuadError::InvalidInterval {
            lo: iv.lo,
            hi: iv.hi,
        });
    }
    let width = |i: usize| max_panel_width.get(i).copied().flatten();
    match bounds.len() {
        2 => iterated_2d(&mut f, bounds, spec, [width(0), width(1)]),
        4 => {
            let panels: Vec<usize> = (0..4)
                .map(|i| initial_panel_count(bounds[i].width(), width(i)))
                .collect();
            genz_malik(&mut f, bounds, &panels, spec)
        }
        n => Err(QuadError::UnsupportedDimension(n)),
    }
}

fn initial_panel_count(width: f64, max_panel_width: Option<f64>) -> usize {
    match max_panel_width {
        Some(w) if w > 0.0 => ((width / w).ceil() as usize).max(1),
        _ => 1,
    }
}

fn checked(v: f64, at: &[f64]) -> Result<f64, QuadError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadError::NonFiniteIntegrand {
            at: at.to_vec(),
            value: v,
        })
    }
}

fn iterated_2d<F>(
    f: &mut F,
    bounds: &[Interval],
    spec: &QuadratureSpec,
    widths: [Option<f64>; 2],
) -> Result<Integral, QuadError>
where
    F: FnMut(&[f64]) -> f64,
{
    let (outer, inner) = (bounds[0], bounds[1]);
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1 / outer.width(),
        ..*spec
    };
    let inner_panels = initial_panel_count(inner.width(), widths[1]);
    let outer_panels = initial_panel_count(outer.width(), widths[0]);
    let worst_inner = Cell::new(0.0_f64);
    let outer_result = adaptive_1d(
        |x| {
            let r = adaptive_1d(
                |y| checked(f(&[x, y]), &[x, y]),
                inner.lo,
                inner.hi,
                inner_panels,
                &inner_spec,
            )?;
            worst_inner.set(worst_inner.get().max(r.err_est));
            Ok(r.value)
        },
        outer.lo,
        outer.hi,
        outer_panels,
        spec,
    )?;
    Ok(Integral {
        value: outer_result.value,
        err_est: outer_result.err_est + worst_inner.get() * outer.width(),
    })
}

// 15-point Kronrod abscissae (descending, last is the centre) and weights,
// with the weights of the embedded 7-point Gauss rule on the odd nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
    /// Round-off floor of `err`; bisection cannot go below it.
    floor: f64,
    id: usize,
}

/// Gauss–Kronrod 7/15 on `[lo, hi]`: value, error estimate, and the
/// round-off floor `50 ε ∫|f|` that the estimate never drops below.
fn kronrod15<F>(f: &mut F, lo: f64, hi: f64) -> Result<(f64, f64, f64), QuadError>
where
    F: FnMut(f64) -> Result<f64, QuadError>,
{
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let abs_half = half.abs();

    let fc = f(centre)?;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(centre - dx)?;
        let f2 = f(centre + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }

    let result = resk * half;
    resabs *= abs_half;
    resasc *= abs_half;
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Ok((result, err, floor))
}

struct ByError<T>(T, f64, usize);

impl<T> PartialEq for ByError<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T> Eq for ByError<T> {}
impl<T> PartialOrd for ByError<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for ByError<T> {
    // Largest error first; among equal errors the oldest item wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.total_cmp(&other.1).then_with(|| other.2.cmp(&self.2))
    }
}

fn sum_by_id(items: &mut [(usize, f64, f64, f64)]) -> (f64, f64, f64) {
    items.sort_by_key(|it| it.0);
    items
        .iter()
        .fold((0.0, 0.0, 0.0), |(v, e, r), it| (v + it.1, e + it.2, r + it.3))
}

/// The error estimate is all round-off: the integral is known as well as
/// floating point allows, e.g. when it nearly cancels to zero.
fn at_round_off(err: f64, floor: f64) -> bool {
    err <= floor * (1.0 + 1e-9)
}

fn adaptive_1d<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    initial_panels: usize,
    spec: &QuadratureSpec,
) -> Result<Integral, QuadError>
where
    F: FnMut(f64) -> Result<f64, QuadError>,
{
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    let mut next_id = 0;
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut total_floor = 0.0;

    let step = (hi - lo) / initial_panels as f64;
    for i in 0..initial_panels {
        let a = lo + step * i as f64;
        let b = if i + 1 == initial_panels { hi } else { lo + step * (i + 1) as f64 };
        let (value, err, floor) = kronrod15(&mut f, a, b)?;
        total += value;
        total_err += err;
        total_floor += floor;
        heap.push(ByError(Panel { lo: a, hi: b, value, err, floor, id: next_id }, err, next_id));
        next_id += 1;
    }

    let mut subdivisions = 0;
    loop {
        while total_err > spec.tolerance_for(total) && !at_round_off(total_err, total_floor) {
            let Some(ByError(worst, _, _)) = heap.pop() else {
                break;
            };
            let mid = 0.5 * (worst.lo + worst.hi);
            let exhausted = 0.5 * (worst.hi - worst.lo) < spec.min_panel_width || mid <= worst.lo || mid >= worst.hi;
            if exhausted || at_round_off(worst.err, worst.floor) {
                frozen.push(worst);
                continue;
            }
            if subdivisions >= spec.max_subdivisions {
                heap.push(ByError(worst, worst.err, worst.id));
                break;
            }
            subdivisions += 1;
            let (v1, e1, r1) = kronrod15(&mut f, worst.lo, mid)?;
            let (v2, e2, r2) = kronrod15(&mut f, mid, worst.hi)?;
            total += v1 + v2 - worst.value;
            total_err += e1 + e2 - worst.err;
            total_floor += r1 + r2 - worst.floor;
            for (a, b, value, err, floor) in [(worst.lo, mid, v1, e1, r1), (mid, worst.hi, v2, e2, r2)] {
                heap.push(ByError(Panel { lo: a, hi: b, value, err, floor, id: next_id }, err, next_id));
                next_id += 1;
            }
        }

        // The running totals drift; decide on an exact, ordered re-summation.
        let mut parts: Vec<(usize, f64, f64, f64)> = heap
            .iter()
            .map(|p| &p.0)
            .chain(frozen.iter())
            .map(|p| (p.id, p.value, p.err, p.floor))
            .collect();
        let (value, err_est, floor) = sum_by_id(&mut parts);
        if err_est <= spec.tolerance_for(value) || at_round_off(err_est, floor) {
            return Ok(Integral { value, err_est });
        }
        if heap.is_empty() || subdivisions >= spec.max_subdivisions {
            return Err(QuadError::NonConvergence {
                value,
                err_est,
                subdivisions,
            });
        }
        (total, total_err, total_floor) = (value, err_est, floor);
    }
}

#[derive(Debug, Clone)]
struct Region {
    centre: Vec<f64>,
    half: Vec<f64>,
    value: f64,
    err: f64,
    split_axis: usize,
    id: usize,
}

struct GenzMalik {
    dim: usize,
    w: [f64; 5],
    w5: [f64; 4],
}

const LAMBDA2: f64 = 0.358_568_582_800_318_1; // sqrt(9/70)
const LAMBDA4: f64 = 0.948_683_298_050_513_8; // sqrt(9/10)
const LAMBDA5: f64 = 0.688_247_201_611_685_3; // sqrt(9/19)

impl GenzMalik {
    fn new(dim: usize) -> Self {
        let n = dim as f64;
        Self {
            dim,
            w: [
                (12824.0 - 9120.0 * n + 400.0 * n * n) / 19683.0,
                980.0 / 6561.0,
                (1820.0 - 400.0 * n) / 19683.0,
                200.0 / 19683.0,
                6859.0 / 19683.0 / 2f64.powi(dim as i32),
            ],
            w5: [
                (729.0 - 950.0 * n + 50.0 * n * n) / 729.0,
                245.0 / 486.0,
                (265.0 - 100.0 * n) / 1458.0,
                25.0 / 729.0,
            ],
        }
    }

    fn apply<F>(&self, f: &mut F, centre: &[f64], half: &[f64]) -> Result<(f64, f64, usize), QuadError>
    where
        F: FnMut(&[f64]) -> f64,
    {
        let d = self.dim;
        let mut x = centre.to_vec();
        let mut eval = |x: &[f64]| checked(f(x), x);

        let f0 = eval(&x)?;
        let mut s2 = 0.0;
        let mut s3 = 0.0;
        let mut best_axis = 0;
        let mut best_diff = -1.0;
        let ratio = (LAMBDA2 * LAMBDA2) / (LAMBDA4 * LAMBDA4);
        for i in 0..d {
            x[i] = centre[i] - LAMBDA2 * half[i];
            let a1 = eval(&x)?;
            x[i] = centre[i] + LAMBDA2 * half[i];
            let a2 = eval(&x)?;
            x[i] = centre[i] - LAMBDA4 * half[i];
            let b1 = eval(&x)?;
            x[i] = centre[i] + LAMBDA4 * half[i];
            let b2 = eval(&x)?;
            x[i] = centre[i];
            s2 += a1 + a2;
            s3 += b1 + b2;
            let diff = ((a1 + a2 - 2.0 * f0) - ratio * (b1 + b2 - 2.0 * f0)).abs();
            if diff > best_diff {
                best_diff = diff;
                best_axis = i;
            }
        }

        let mut s4 = 0.0;
        for i in 0..d {
            for j in (i + 1)..d {
                for (si, sj) in [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)] {
                    x[i] = centre[i] + si * LAMBDA4 * half[i];
                    x[j] = centre[j] + sj * LAMBDA4 * half[j];
                    s4 += eval(&x)?;
                }
                x[i] = centre[i];
                x[j] = centre[j];
            }
        }

        let mut s5 = 0.0;
        for corner in 0..(1usize << d) {
            for i in 0..d {
                let sign = if corner >> i & 1 == 1 { 1.0 } else { -1.0 };
                x[i] = centre[i] + sign * LAMBDA5 * half[i];
            }
            s5 += eval(&x)?;
        }

        let volume: f64 = half.iter().map(|h| 2.0 * h).product();
        let deg7 = volume * (self.w[0] * f0 + self.w[1] * s2 + self.w[2] * s3 + self.w[3] * s4 + self.w[4] * s5);
        let deg5 = volume * (self.w5[0] * f0 + self.w5[1] * s2 + self.w5[2] * s3 + self.w5[3] * s4);
        let roundoff = 50.0 * f64::EPSILON * deg7.abs();
        Ok((deg7, (deg7 - deg5).abs().max(roundoff), best_axis))
    }
}

fn genz_malik<F>(
    f: &mut F,
    bounds: &[Interval],
    panels: &[usize],
    spec: &QuadratureSpec,
) -> Result<Integral, QuadError>
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = bounds.len();
    let rule = GenzMalik::new(dim);
    let mut heap: BinaryHeap<ByError<Region>> = BinaryHeap::new();
    let mut frozen: Vec<Region> = Vec::new();
    let mut next_id = 0;
    let mut total = 0.0;
    let mut total_err = 0.0;

    let steps: Vec<f64> = (0..dim).map(|i| bounds[i].width() / panels[i] as f64).collect();
    let count: usize = panels.iter().product();
    if count > spec.max_subdivisions {
        return Err(QuadError::NonConvergence {
            value: f64::NAN,
            err_est: f64::INFINITY,
            subdivisions: 0,
        });
    }
    let mut index = vec![0usize; dim];
    for _ in 0..count {
        let centre: Vec<f64> = (0..dim)
            .map(|i| bounds[i].lo + steps[i] * (index[i] as f64 + 0.5))
            .collect();
        let half: Vec<f64> = steps.iter().map(|s| 0.5 * s).collect();
        let (value, err, split_axis) = rule.apply(f, &centre, &half)?;
        total += value;
        total_err += err;
        heap.push(ByError(
            Region { centre, half, value, err, split_axis, id: next_id },
            err,
            next_id,
        ));
        next_id += 1;
        for i in (0..dim).rev() {
            index[i] += 1;
            if index[i] < panels[i] {
                break;
            }
            index[i] = 0;
        }
    }

    let mut subdivisions = 0;
    while total_err > spec.tolerance_for(total) {
        let Some(ByError(worst, _, _)) = heap.pop() else {
            break;
        };
        let axis = worst.split_axis;
        if worst.half[axis] < spec.min_panel_width {
            frozen.push(worst);
            continue;
        }
        if subdivisions >= spec.max_subdivisions {
            let err = worst.err;
            let id = worst.id;
            heap.push(ByError(worst, err, id));
            break;
        }
        subdivisions += 1;
        let mut half = worst.half.clone();
        half[axis] *= 0.5;
        total -= worst.value;
        total_err -= worst.err;
        for sign in [-1.0, 1.0] {
            let mut centre = worst.centre.clone();
            centre[axis] += sign * half[axis];
            let (value, err, split_axis) = rule.apply(f, &centre, &half)?;
            total += value;
            total_err += err;
            heap.push(ByError(
                Region { centre, half: half.clone(), value, err, split_axis, id: next_id },
                err,
                next_id,
            ));
            next_id += 1;
        }
    }

    let mut parts: Vec<(usize, f64, f64, f64)> = heap
        .into_iter()
        .map(|r| r.0)
        .chain(frozen)
        .map(|r| (r.id, r.value, r.err, 0.0))
        .collect();
    let (value, err_est, _) = sum_by_id(&mut parts);
    if err_est > spec.tolerance_for(value) {
        return Err(QuadError::NonConvergence {
            value,
            err_est,
            subdivisions,
        });
    }
    Ok(Integral { value, err_est })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(rel: f64) -> QuadratureSpec {
        QuadratureSpec::one_d().with_rel_tol(rel)
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_1d(|x| (-x).exp(), Interval::semi_infinite(0.0).unwrap(), &spec(1e-10)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn polynomial() {
        let r = integrate_1d(|x| x * x, Interval::new(0.0, 1.0).unwrap(), &spec(1e-12)).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_integrand_shape() {
        let r = integrate_1d(
            |x| (-x).exp() * (x + x * x + x.powi(3) / 6.0),
            Interval::semi_infinite(0.0).unwrap(),
            &spec(1e-10),
        )
        .unwrap();
        assert!((r.value - 4.0).abs() < 4e-10, "{r:?}");
    }

    #[test]
    fn gaussian_normalization_2d() {
        let b = Interval::symmetric(8.0).unwrap();
        let r = integrate_nd(|v| (-v[0] * v[0] - v[1] * v[1]).exp() / PI, &[b, b], &QuadratureSpec::two_d()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn box_volume() {
        let r = integrate_nd(
            |_| 1.0,
            &[Interval::new(0.0, 1.0).unwrap(), Interval::new(0.0, 2.0).unwrap()],
            &QuadratureSpec::two_d(),
        )
        .unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_cosine_against_closed_form() {
        // ∫cos(2 r0 x) e^{-2x²} dx = sqrt(pi/2) e^{-r0²/2}, second axis of width 3.
        let r0: f64 = 3.0;
        let b = [Interval::symmetric(8.0).unwrap(), Interval::new(0.0, 3.0).unwrap()];
        let oracle = (PI / 2.0).sqrt() * (-r0 * r0 / 2.0).exp() * 3.0;
        let r = integrate_nd_panelled(
            |v| (2.0 * r0 * v[0]).cos() * (-2.0 * v[0] * v[0]).exp(),
            &b,
            &QuadratureSpec::two_d(),
            &[oscillatory_panel_width(2.0 * r0), None],
        )
        .unwrap();
        assert!((r.value - oracle).abs() < 1e-10 * oracle.abs().max(1e-3), "{} vs {oracle}", r.value);
    }

    #[test]
    fn four_d_gaussian() {
        let b = Interval::symmetric(7.0).unwrap();
        let r = integrate_nd(
            |v| (-v.iter().map(|x| x * x).sum::<f64>()).exp() / (PI * PI),
            &[b; 4],
            &QuadratureSpec::four_d().with_rel_tol(1e-7),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn unsupported_dimension() {
        let b = Interval::new(0.0, 1.0).unwrap();
        let err = integrate_nd(|_| 1.0, &[b; 3], &QuadratureSpec::four_d()).unwrap_err();
        assert_eq!(err, QuadError::UnsupportedDimension(3));
    }

    #[test]
    fn non_finite_integrand() {
        let err = integrate_1d(|x| 1.0 / (x - 0.5), Interval::new(0.0, 1.0).unwrap(), &spec(1e-8));
        // The midpoint 0.5 is a Kronrod node of the first panel.
        assert!(matches!(err, Err(QuadError::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn non_convergence() {
        let tight = QuadratureSpec::new(1e-10, 0.0, 3, 0.0).unwrap();
        let err = integrate_1d(|x| 1.0 / x.sqrt(), Interval::new(0.0, 1.0).unwrap(), &tight);
        assert!(matches!(err, Err(QuadError::NonConvergence { subdivisions: 3, .. })), "{err:?}");
    }

    #[test]
    fn cancelling_integral_stops_at_round_off() {
        // Exactly zero, so a purely relative tolerance can never be met.
        let s = QuadratureSpec::new(1e-12, 0.0, 2000, 0.0).unwrap();
        let r = integrate_1d(|x| x.sin() * (-x * x).exp(), Interval::new(-3.0, 3.0).unwrap(), &s).unwrap();
        assert!(r.value.abs() < 1e-15);
        assert!(r.err_est < 1e-13);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, 0.0).is_err());
        assert!(QuadratureSpec::new(0.0, 0.0, 10, 0.0).is_err());
        assert!(QuadratureSpec::new(1e-6, -1.0, 10, 0.0).is_err());
        assert!(QuadratureSpec::new(1e-6, 0.0, 0, 0.0).is_err());
    }

    #[test]
    fn oscillation_resolution() {
        // cos(w x) e^{-x²} integrates to sqrt(pi) e^{-w²/4}; the relative
        // tolerance is applied against the (tiny) result, so give an absolute
        // floor above the summed round-off of several hundred panels.
        for w in [1.0, 6.0, 12.0, 24.0] {
            let s = spec(1e-10).with_abs_tol(1e-13);
            let r = integrate_1d_panelled(
                |x| (w * x).cos() * (-x * x).exp(),
                Interval::symmetric(9.0).unwrap(),
                &s,
                oscillatory_panel_width(w),
            )
            .unwrap();
            let exact = PI.sqrt() * (-w * w / 4.0).exp();
            assert!((r.value - exact).abs() <= 1e-13_f64.max(1e-10 * exact), "w={w}: {} vs {exact}", r.value);
        }
    }
}
