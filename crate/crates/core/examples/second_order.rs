//! Second-order constant-coefficient problems: distinct, complex and double
//! characteristic roots, plus a root that the derivator rules out.

use stieltjes::second_order::{characteristic_roots, solve_nonhomogeneous, SecondOrderProblem};
use stieltjes::{Complex64, ContinuousPart, Derivator, Integrand, JumpSet};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> stieltjes::Result<()> {
    let d = Derivator::new(ContinuousPart::identity(3.0)?, JumpSet::new([(1.0, 0.3), (2.0, 0.4)])?)?;
    let source = Integrand::real(|t| 1.0 + t);
    for (p, q) in [(3.0, 2.0), (0.5, 4.0), (2.0, 1.0)] {
        let prob = SecondOrderProblem::homogeneous(c(p), c(q), c(1.0), c(0.0)).with_source(source.clone());
        let sol = solve_nonhomogeneous(&d, &prob)?;
        println!("P = {p}, Q = {q}: roots {:?}", characteristic_roots(c(p), c(q)));
        for t in [0.5, 1.0, 2.0, 3.0] {
            println!("  v({t}) = {:+.10}   v'_g({t}) = {:+.10}", sol.value(t)?.re, sol.derivative(t)?.re);
        }
    }
    // λ = -2 and a jump of 0.5 give 1 + λΔ = 0
    let d_bad = Derivator::new(ContinuousPart::identity(3.0)?, JumpSet::new([(2.0, 0.5)])?)?;
    let bad = SecondOrderProblem::homogeneous(c(3.0), c(2.0), c(1.0), c(0.0));
    println!("rejected: {}", solve_nonhomogeneous(&d_bad, &bad).unwrap_err());
    Ok(())
}
