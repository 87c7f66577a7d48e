//! The damped Stieltjes oscillator in its three regimes on the worked example
//! derivators, across the jump sizes 0, 1/27, 1/9, 1/3, 1.

use stieltjes::oscillator::{solve_oscillator, OscillatorSpec};
use stieltjes::presets;

fn main() -> stieltjes::Result<()> {
    for zeta in [0.5, 1.0, 2.0] {
        println!("zeta = {zeta}");
        for &l in &presets::EXAMPLE1_L_SWEEP {
            let d = presets::example1_g2(l, presets::TABLE1_HORIZON)?;
            let spec = OscillatorSpec::new(d, presets::EXAMPLE1_OMEGA0, zeta, presets::EXAMPLE1_X0, presets::EXAMPLE1_V0);
            let sol = solve_oscillator(&spec)?;
            let samples: Vec<String> = [1.0, 3.0, 5.0, 8.5].iter().map(|&t| format!("{:+.5}", sol.value(t).unwrap())).collect();
            println!("  l = {l:.4} ({:?}): v(1,3,5,8.5) = {}", sol.regime(), samples.join(" "));
        }
    }
    Ok(())
}
