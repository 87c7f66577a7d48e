//! Numerical g-derivatives at each kind of point, including the product-rule
//! pathology at a jump.

use stieltjes::g_derivative::{g_derivative_at, GDiffSettings};
use stieltjes::{Complex64, ContinuousPart, Derivator, Integrand, JumpSet};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> stieltjes::Result<()> {
    let d = Derivator::new(ContinuousPart::identity(2.0)?, JumpSet::new([(1.0, 2.0)])?)?;
    let s = GDiffSettings::for_derivator(&d);
    let f = Integrand::with_right_limit(|t| re(if t <= 1.0 { t - 1.0 } else { 2.0 }), |_| re(2.0));
    let f2 = Integrand::with_right_limit(|t| re(if t <= 1.0 { (t - 1.0).powi(2) } else { 4.0 }), |_| re(4.0));
    for t in [0.5, 0.999, 1.0, 1.5] {
        println!(
            "t = {t:5}: f' = {:+.6}, (f^2)' = {:+.6}",
            g_derivative_at(&d, &f, t, &s)?.re,
            g_derivative_at(&d, &f2, t, &s)?.re
        );
    }
    println!("(f^2)' tends to 0 from the left but equals 2 at the jump");
    Ok(())
}
