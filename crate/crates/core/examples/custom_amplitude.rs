// Any real Born amplitude can be plugged into the quadrature routes; the
// hydrogen closed form is then unavailable.

use catscatter::analysis::{azimuthal_asymmetry, AsymmetrySpec};
use catscatter::scattering::event_density;
use catscatter::{Amplitude, BeamState, Kinematics, MethodChoice, ScatteringConfig, TargetProfile};

pub fn run_example() -> catscatter::Result<()> {
    let kin = Kinematics::elastic(10.0, 10f64.to_radians(), 0.0)?;
    let state = BeamState::odd_cat(2.0, 2.0, 0.0)?;
    // Yukawa-screened Coulomb amplitude with screening length λ.
    for lambda in [0.5, 1.0, 2.0] {
        let amp = Amplitude::custom(move |q| 2.0 * lambda * lambda / (1.0 + lambda * lambda * q * q));
        let cfg = ScatteringConfig::new(state, TargetProfile::wide()).with_amplitude(amp);
        let ed = event_density(&cfg, &kin, MethodChoice::Auto)?;
        let a = azimuthal_asymmetry(&AsymmetrySpec::new(cfg, kin))?.a;
        println!("λ = {lambda}: dσ/dΩ = {:.6e} ({}), A = {a:+.5}", ed.value, ed.method.as_str());
    }
    let cfg = ScatteringConfig::new(state, TargetProfile::wide());
    let a = azimuthal_asymmetry(&AsymmetrySpec::new(cfg, kin))?.a;
    println!("hydrogen 1s: A = {a:+.5}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
