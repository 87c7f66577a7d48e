//! Building derivators and inspecting their structure.

use stieltjes::{ContinuousPart, Derivator, JumpSet, PointClass};

fn main() -> stieltjes::Result<()> {
    // staircase saw with two jumps, one of them inside a flat interval
    let d = Derivator::new(
        ContinuousPart::staircase_saw(4.5)?,
        JumpSet::new([(0.5, 0.25), (1.5, 1.0)])?,
    )?;
    println!("g(T) = {}", d.eval(d.horizon())?);
    for c in d.flat_components() {
        println!("flat [{}, {}]  left end is a jump: {}", c.a, c.b, c.a_is_jump);
    }
    for t in [0.25, 0.5, 1.0, 1.25, 1.5, 2.0, 3.5] {
        let class: PointClass = d.classify(t)?;
        println!("t = {t:4}: g = {:.3}, g(t+) = {:.3}, {class:?}", d.eval(t)?, d.eval_right(t)?);
    }
    // γ picks the smallest preimage, i.e. the left end of a flat
    println!("gamma(1.0) = {}", d.pseudo_inverse(1.0)?);
    Ok(())
}
