// Azimuthal asymmetry of cat-state beams on a wide hydrogen target, and its
// fall-off with the packet width.

use catscatter::analysis::{azimuthal_asymmetry, AsymmetrySpec, Metric};
use catscatter::{BeamState, Kinematics, ScatteringConfig, TargetProfile};

fn asymmetry(state: BeamState, metric: Metric) -> catscatter::Result<f64> {
    let kin = Kinematics::elastic(10.0, 10f64.to_radians(), 0.0)?;
    let spec = AsymmetrySpec::new(ScatteringConfig::new(state, TargetProfile::wide()), kin).with_metric(metric);
    Ok(azimuthal_asymmetry(&spec)?.a)
}

pub fn run_example() -> catscatter::Result<()> {
    println!("p = 10/a, θ = 10°");
    println!("{:>4} {:>6} {:>12} {:>12} {:>12}", "σ/a", "r0/σ", "odd A", "even A", "even minmax");
    for sigma in [2.0, 4.0] {
        for k in [1.0, 1.5, 2.0, 3.0] {
            let odd = asymmetry(BeamState::odd_cat(sigma, k * sigma, 0.0)?, Metric::ParaPerp)?;
            let even = asymmetry(BeamState::even_cat(sigma, k * sigma, 0.0)?, Metric::ParaPerp)?;
            let mm = asymmetry(BeamState::even_cat(sigma, k * sigma, 0.0)?, Metric::MinMax)?;
            println!("{sigma:>4} {k:>6.1} {odd:>12.5} {even:>12.5} {mm:>12.5}");
        }
    }
    let g = asymmetry(BeamState::gaussian(2.0)?, Metric::MinMax)?;
    let m = asymmetry(BeamState::incoherent_pair(2.0, 4.0, 0.0)?, Metric::MinMax)?;
    println!("gaussian {g:.1e}, incoherent pair {m:.1e} (no interference, no asymmetry)");
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
