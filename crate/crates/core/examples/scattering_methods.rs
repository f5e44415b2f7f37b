// The three independent routes to dν/dΩ agree, and convert to the same
// effective cross section for any number of incident electrons.

use catscatter::scattering::{
    cross_section, event_density_cat_closed, event_density_cat_quadrature, event_density_general,
};
use catscatter::{BeamState, Kinematics, ScatteringConfig, TargetProfile, Vec2};

pub fn run_example() -> catscatter::Result<()> {
    let target = TargetProfile::gaussian(20.0, Vec2::new(1.0, 0.0))?;
    let kin = Kinematics::elastic(10.0, 10f64.to_radians(), 0.0)?;
    for (name, state) in [
        ("odd cat r0 = σ", BeamState::odd_cat(2.0, 2.0, 0.0)?),
        ("even cat r0 = 2σ", BeamState::even_cat(2.0, 4.0, 0.0)?),
    ] {
        let cfg = ScatteringConfig::new(state, target).with_n_e(1000)?;
        let general = event_density_general(&cfg, &kin)?;
        let quad = event_density_cat_quadrature(&cfg, &kin)?;
        let closed = event_density_cat_closed(&cfg, &kin)?;
        println!("{name}");
        for ed in [general, quad, closed] {
            println!(
                "  {:<13} dν/dΩ = {:.12e} ± {:.1e}   dσ/dΩ = {:.10e} a²",
                ed.method.as_str(),
                ed.value,
                ed.err_est,
                cross_section(&ed, cfg.n_e)?
            );
        }
    }

    let wide = ScatteringConfig::new(BeamState::odd_cat(2.0, 2.0, 0.0)?, TargetProfile::wide());
    let ed = event_density_cat_closed(&wide, &kin)?;
    println!("wide target: dσ/dΩ = {:.10e} a² (reported directly)", ed.value);
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
