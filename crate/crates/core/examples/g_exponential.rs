//! The g-exponential, its truncation, and the g-sine/g-cosine modulus law.

use stieltjes::first_order::{g_exp, g_sin_cos};
use stieltjes::{Complex64, ContinuousPart, Derivator, JumpSet};

fn main() -> stieltjes::Result<()> {
    let d = Derivator::new(ContinuousPart::identity(3.0)?, JumpSet::new([(1.0, 0.5), (2.0, 0.5)])?)?;

    let e = g_exp(&d, Complex64::new(-0.4, 1.0))?;
    for t in [0.0, 1.0, 1.5, 3.0] {
        println!("exp_g(-0.4+i; 0, {t}) = {:.6}", e.value(t)?);
    }

    // 1 + βΔ = 0 at t = 1 truncates the exponential
    let dead = g_exp(&d, -2.0)?;
    println!("truncation time for β = -2: {:?}", dead.truncation());
    println!("exp_g(-2; 0, 1.5) = {}", dead.value(1.5)?);
    println!("inverse past t0: {:?}", dead.inverse(1.5).err());

    let sc = g_sin_cos(&d, 2.0)?;
    let t = 3.0;
    let (s, c) = (sc.sin(t)?.re, sc.cos(t)?.re);
    println!("cos_g^2 + sin_g^2 = {:.12}, product (1+b²Δ²) = {:.12}", s * s + c * c, 2.0f64 * 2.0);
    Ok(())
}
