//! Lebesgue-Stieltjes integrals against μ_g.

use stieltjes::stieltjes_integral::{continuous_integral, jump_sum, ls_integral, ls_measure};
use stieltjes::{ContinuousPart, Derivator, Integrand, JumpSet, QuadratureSettings};

fn main() -> stieltjes::Result<()> {
    let d = Derivator::new(
        ContinuousPart::staircase_saw(2.5)?,
        JumpSet::new([(0.5, 0.5), (2.25, 1.0)])?,
    )?;
    let q = QuadratureSettings::default();
    let f = Integrand::real(|t| t * t);
    let t = d.horizon();
    let cont = continuous_integral(&d, &f, 0.0, t, &q)?;
    let jumps = jump_sum(&d, &f, 0.0, t);
    println!("continuous part  {:.12}", cont.re);
    println!("jump part        {:.12}  (= 0.5·0.25 + 1.0·2.25²)", jumps.re);
    println!("total            {:.12}", ls_integral(&d, &f, t, &q)?.re);
    println!("μ_g([0.5, 2.25)) {}", ls_measure(&d, 0.5, 2.25)?);
    Ok(())
}
