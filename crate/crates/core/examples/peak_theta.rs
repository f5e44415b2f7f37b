// Two different "peaks" in θ: the angular distribution itself falls off
// monotonically from forward scattering, while the azimuthal asymmetry has a
// maximum that moves to smaller angles as the momentum grows.

use catscatter::analysis::{asymmetry_peak_theta, linspace, peak_theta, AsymmetrySpec};
use catscatter::{BeamState, Error, Kinematics, MethodChoice, ScatteringConfig, TargetProfile};

pub fn run_example() -> catscatter::Result<()> {
    let grid = linspace(1f64.to_radians(), 45f64.to_radians(), 89);
    for p in [10.0, 20.0, 30.0] {
        let gauss = ScatteringConfig::new(BeamState::gaussian(2.0)?.with_p_i(p)?, TargetProfile::wide());
        let dist = match peak_theta(&gauss, p, &grid, MethodChoice::Auto) {
            Ok(pk) => format!("{:.2}°{}", pk.theta_star.to_degrees(), if pk.at_boundary { " (edge)" } else { "" }),
            Err(Error::FlatDistribution(r)) => format!("flat ({r:.3})"),
            Err(e) => return Err(e),
        };
        let cat = ScatteringConfig::new(BeamState::even_cat(2.0, 4.0, 0.0)?.with_p_i(p)?, TargetProfile::wide());
        let spec = AsymmetrySpec::new(cat, Kinematics::elastic(p, 0.1, 0.0)?);
        let asym = asymmetry_peak_theta(&spec, &linspace(1f64.to_radians(), 30f64.to_radians(), 59))?;
        println!(
            "p = {p:>4}/a: dσ/dΩ maximal at {dist:<14} |A| maximal at {:.2}° (|A| = {:.4})",
            asym.theta_star.to_degrees(),
            asym.dnu_star
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
