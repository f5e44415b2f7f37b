// Where the Wigner functions of cat states go negative, and where the
// incoherent mixture does not.

use catscatter::beam::{negativity_scan, standard_scan_box, wigner, ScanMode};
use catscatter::{BeamState, PhasePoint};

pub fn run_example() -> catscatter::Result<()> {
    let sigma = 2.0;
    println!("{:<10} {:>6} {:>14} {:>10} {:>14}", "state", "r0/σ", "min W", "neg frac", "W(0,0)·π²");
    for k in [0.5, 1.0, 2.0, 3.0] {
        let r0 = k * sigma;
        for (name, state) in [
            ("even cat", BeamState::even_cat(sigma, r0, 0.0)?),
            ("odd cat", BeamState::odd_cat(sigma, r0, 0.0)?),
            ("mixture", BeamState::incoherent_pair(sigma, r0, 0.0)?),
        ] {
            let (r, p) = standard_scan_box(&state);
            let rep = negativity_scan(&state, r, p, ScanMode::Slice.default_grid(), ScanMode::Slice)?;
            let w0 = wigner(&state, PhasePoint::origin()) * std::f64::consts::PI.powi(2);
            println!(
                "{name:<10} {k:>6.1} {:>14.4e} {:>10.4} {w0:>14.6}",
                rep.min_value, rep.negative_volume_fraction
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
