//! Resonance: the undamped oscillator forced by cos_g(ω₀; 0, t), compared with
//! the generic second-order solver.

use stieltjes::oscillator::{solve_resonance, OscillatorSpec};
use stieltjes::presets;

fn main() -> stieltjes::Result<()> {
    let d = presets::table1();
    let sol = solve_resonance(&OscillatorSpec::new(d, 2.0, 0.0, 1.0, 1.0))?;
    let generic = sol.generic()?;
    for t in [0.5, 2.0, 4.0, 6.0, 8.5] {
        let (i1, i2) = sol.amplitude_integrals(t);
        println!(
            "t = {t:3}: v = {:+.10}  generic {:+.10}  I1 = {i1:.5}  I2 = {i2:.5}",
            sol.value(t)?,
            generic.value(t)?.re
        );
    }
    Ok(())
}
