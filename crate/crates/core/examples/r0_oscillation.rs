// The asymmetry of an even cat rises and falls with the packet separation.

use catscatter::analysis::{detect_oscillation, linspace, sweep, AsymmetrySpec, SweepAxis};
use catscatter::{BeamState, Kinematics, ScatteringConfig, TargetProfile};

pub fn run_example() -> catscatter::Result<()> {
    let state = BeamState::even_cat(2.0, 2.0, 0.0)?.with_p_i(20.0)?;
    let r0s = linspace(2.0, 8.0, 13);
    for theta in [1.0f64, 3.0, 6.0] {
        let spec = AsymmetrySpec::new(
            ScatteringConfig::new(state, TargetProfile::wide()),
            Kinematics::elastic(20.0, theta.to_radians(), 0.0)?,
        );
        let mut series = Vec::new();
        for (r0, row) in r0s.iter().zip(sweep(&spec, SweepAxis::R0, &r0s)?) {
            series.push((*r0, row?.a));
        }
        let osc = detect_oscillation(&series)?;
        let shown: Vec<String> = series.iter().map(|(r, a)| format!("{r:.1}:{a:+.4}")).collect();
        println!("θ = {theta}°  monotonic = {}  [{}]", osc.is_monotonic, shown.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
