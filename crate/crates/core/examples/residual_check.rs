//! Plugging a closed-form solution back into its equation with numerical
//! g-derivatives.

use stieltjes::g_derivative::{residual_second_order, GDiffSettings};
use stieltjes::oscillator::{solve_oscillator, OscillatorSpec};
use stieltjes::{Complex64, Integrand, PointClass};

fn main() -> stieltjes::Result<()> {
    let d = stieltjes::presets::table1();
    let osc = solve_oscillator(&OscillatorSpec::new(d.clone(), 2.0, 0.5, 1.0, 1.0))?;
    let dv = osc.generic()?.derivative_fn();
    let mut grid: Vec<f64> = (0..=85).map(|i| i as f64 * 0.1).filter(|&t| d.classify(t) == Ok(PointClass::Regular)).collect();
    grid.extend(d.jumps().iter().map(|j| j.t));
    let r = residual_second_order(
        &d,
        &osc,
        Some(&dv),
        Complex64::new(2.0, 0.0),
        Complex64::new(4.0, 0.0),
        &Integrand::zero(),
        &grid,
        &GDiffSettings::for_derivator(&d),
    )?;
    println!("residual off jumps {:.2e}, at jumps {:.2e}", r.off_jumps, r.at_jumps);
    Ok(())
}
