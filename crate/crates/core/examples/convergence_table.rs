//! Predictor-corrector convergence study on the saw derivator with jumps of
//! size 1/3, printed and written as CSV to stdout.

use stieltjes::oscillator::{solve_resonance, OscillatorSpec};
use stieltjes::presets;
use stieltjes::scheme::{convergence_study, OscillatorSystem};
use stieltjes::Complex64;

fn main() -> stieltjes::Result<()> {
    let d = presets::table1();
    let w = presets::EXAMPLE1_OMEGA0;
    let exact = solve_resonance(&OscillatorSpec::new(d.clone(), w, 0.0, 1.0, 1.0))?;
    let rhs = OscillatorSystem::new(&d, w)?;
    let y0 = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
    let h = [1e-1, 1e-2, 1e-3, 1e-4];
    let table = convergence_study(&d, &rhs, &y0, 1, &|t| exact.value(t).map(|v| Complex64::new(v, 0.0)), &h)?;
    for r in &table.rows {
        println!("h = {:.0e}   e_h = {:.4e}   order {}", r.h, r.e_h, r.order.map_or("-".into(), |o| format!("{o:.3}")));
    }
    println!("fitted order {:.4}", table.fitted_order);
    table.write_csv(&mut std::io::stdout())?;
    Ok(())
}
