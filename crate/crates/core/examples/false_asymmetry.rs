// A slightly elliptical Gaussian also scatters anisotropically, but its
// asymmetry grows smoothly with the ellipticity instead of oscillating.

use catscatter::analysis::{detect_oscillation, linspace, sweep, AsymmetrySpec, Metric, SweepAxis};
use catscatter::{BeamState, Kinematics, ScatteringConfig, TargetProfile};

pub fn run_example() -> catscatter::Result<()> {
    let spec = AsymmetrySpec::new(
        ScatteringConfig::new(BeamState::anisotropic(2.0, 2.0)?, TargetProfile::wide()),
        Kinematics::elastic(10.0, 10f64.to_radians(), 0.0)?,
    )
    .with_metric(Metric::MinMax);
    let ratios = linspace(1.0, 1.3, 7);
    let mut series = Vec::new();
    for (ratio, row) in ratios.iter().zip(sweep(&spec, SweepAxis::AspectRatio, &ratios)?) {
        let a = row?.a;
        println!("σy/σx = {ratio:.2}  A_minmax = {a:.5}");
        series.push((*ratio, a));
    }
    println!("monotonic: {}", detect_oscillation(&series)?.is_monotonic);
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
