// The adaptive quadrature engine on its own: 1-D, semi-infinite, 2-D and 4-D.

use std::f64::consts::PI;

use catscatter::quadrature::{integrate_1d, integrate_1d_panelled, integrate_nd, oscillatory_panel_width};
use catscatter::{Interval, QuadratureSpec};

pub fn run_example() -> catscatter::Result<()> {
    let spec = QuadratureSpec::one_d();

    let r = integrate_1d(|x| x.sin(), Interval::new(0.0, PI)?, &spec)?;
    println!("∫₀^π sin x dx         = {:.15} ± {:.1e}", r.value, r.err_est);

    let r = integrate_1d(|x| (-x).exp() * x * x, Interval::semi_infinite(0.0)?, &spec)?;
    println!("∫₀^∞ x² e^-x dx       = {:.15} ± {:.1e}", r.value, r.err_est);

    // A fast cosine needs panels narrower than its period from the start.
    let w = 24.0;
    let r = integrate_1d_panelled(
        |x| (w * x).cos() * (-x * x / 8.0).exp(),
        Interval::symmetric(20.0)?,
        &spec.with_abs_tol(1e-14),
        oscillatory_panel_width(w),
    )?;
    let exact = (8.0 * PI).sqrt() * (-2.0 * w * w).exp();
    println!("∫ cos(24x) e^(-x²/8)  = {:.3e} (exact {exact:.3e})", r.value);

    let r = integrate_nd(
        |v| (-(v[0] * v[0] + v[1] * v[1])).exp(),
        &[Interval::symmetric(8.0)?, Interval::symmetric(8.0)?],
        &QuadratureSpec::two_d(),
    )?;
    println!("∫∫ e^-(x²+y²)         = {:.12} (π = {PI:.12})", r.value);

    let r = integrate_nd(
        |v| (-v.iter().map(|x| x * x).sum::<f64>()).exp(),
        &[Interval::symmetric(6.0)?; 4],
        &QuadratureSpec::four_d(),
    )?;
    println!("∫⁴ e^-|x|²            = {:.8} (π² = {:.8}, err {:.1e})", r.value, PI * PI, r.err_est);
    Ok(())
}

#[allow(dead_code)]
fn main() -> catscatter::Result<()> {
    run_example()
}
