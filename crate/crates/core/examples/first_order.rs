//! A nonhomogeneous first-order problem and its Green's-function form.

use stieltjes::first_order::{green_first_order, solve_first_order, GreenKernel};
use stieltjes::{Coefficient, Complex64, ContinuousPart, Derivator, Integrand, JumpSet, QuadratureSettings};

fn main() -> stieltjes::Result<()> {
    let d = Derivator::new(ContinuousPart::staircase_saw(4.5)?, JumpSet::new([(0.75, 0.5), (3.25, 0.4)])?)?;
    // time-dependent coefficient β(t) = -0.5 + 0.2 sin t
    let beta = Coefficient::function(|t| Complex64::new(-0.5 + 0.2 * t.sin(), 0.0));
    let f = Integrand::real(|t| (0.7 * t).cos());
    let sol = solve_first_order(&d, beta.clone(), f.clone(), Complex64::new(1.0, 0.0))?;
    let zero_data = solve_first_order(&d, beta.clone(), f.clone(), Complex64::new(0.0, 0.0))?;
    let green = green_first_order(&d, beta)?;
    let q = QuadratureSettings::default();
    for t in [0.5, 0.75, 2.0, 4.5] {
        println!(
            "t = {t:4}: v = {:+.10}, v(t+) = {:+.10}, particular {:+.10} vs Green {:+.10}",
            sol.value(t)?.re,
            sol.value_right(t)?.re,
            zero_data.value(t)?.re,
            green.convolve(&f, t, &q)?.re
        );
    }
    Ok(())
}
