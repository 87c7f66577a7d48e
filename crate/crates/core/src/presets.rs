//! Named derivator configurations from the worked example and convergence
//! table: jumps of size `l` at every `kπ/4` inside the window, on top of either
//! the identity (`example1-g1`) or the staircase saw (`example1-g2`).

use std::f64::consts::FRAC_PI_4;

use crate::derivator::{ContinuousPart, Derivator, JumpSet};
use crate::error::{Error, Result};

/// Window used by the convergence-table preset. It is a regular point of the
/// saw (`T ∈ (8, 9)`), so it is neither a flat endpoint nor a jump.
pub const TABLE1_HORIZON: f64 = 8.5;
pub const TABLE1_JUMP: f64 = 1.0 / 3.0;
pub const EXAMPLE1_OMEGA0: f64 = 2.0;
pub const EXAMPLE1_X0: f64 = 1.0;
pub const EXAMPLE1_V0: f64 = 1.0;
/// Jump sizes swept in the worked example: `0, 1/27, 1/9, 1/3, 1`.
pub const EXAMPLE1_L_SWEEP: [f64; 5] = [0.0, 1.0 / 27.0, 1.0 / 9.0, 1.0 / 3.0, 1.0];

pub const PRESET_NAMES: [&str; 4] = ["identity", "example1-g1", "example1-g2", "table1"];

/// `(kπ/4, l)` for every `k ≥ 1` with `kπ/4 < horizon`; empty when `l = 0`.
pub fn quarter_pi_jumps(horizon: f64, l: f64) -> Result<JumpSet> {
    if l == 0.0 {
        return Ok(JumpSet::empty());
    }
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::invalid(format!("jump size must be non-negative, got {l}")));
    }
    let mut pairs = Vec::new();
    let mut k = 1u32;
    loop {
        let t = k as f64 * FRAC_PI_4;
        if t >= horizon {
            break;
        }
        pairs.push((t, l));
        k += 1;
    }
    JumpSet::new(pairs)
}

/// `g₁ = t + g^B`.
pub fn example1_g1(l: f64, horizon: f64) -> Result<Derivator> {
    Derivator::new(ContinuousPart::identity(horizon)?, quarter_pi_jumps(horizon, l)?)
}

/// `g₂ = g₂^C + g^B` with the staircase saw.
pub fn example1_g2(l: f64, horizon: f64) -> Result<Derivator> {
    Derivator::new(ContinuousPart::staircase_saw(horizon)?, quarter_pi_jumps(horizon, l)?)
}

/// The convergence-table derivator: saw plus jumps of size 1/3 on `[0, 8.5]`.
pub fn table1() -> Derivator {
    example1_g2(TABLE1_JUMP, TABLE1_HORIZON).expect("preset is valid")
}

/// Looks up a preset by name. `l` and `horizon` apply to the example presets;
/// `table1` ignores both.
pub fn by_name(name: &str, l: f64, horizon: f64) -> Result<Derivator> {
    match name {
        "identity" => Derivator::identity(horizon),
        "example1-g1" => example1_g1(l, horizon),
        "example1-g2" => example1_g2(l, horizon),
        "table1" => Ok(table1()),
        other => Err(Error::Config(format!(
            "unknown preset '{other}'; expected one of {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}
