//! Stieltjes differential calculus on a finite window.
//!
//! The crate represents derivators `g` (left-continuous, non-decreasing, with
//! finitely many jumps and flat segments), integrates against `μ_g`,
//! differentiates with respect to `g`, and evaluates closed-form solutions of
//! linear first- and second-order Stieltjes equations. A predictor-corrector
//! integrator cross-checks the closed forms.
//!
//! All solution values are [`Complex64`]; real problems embed with zero
//! imaginary part.

pub mod cli;
pub mod derivator;
pub mod error;
pub mod first_order;
pub mod g_derivative;
pub mod oscillator;
pub mod presets;
pub mod scheme;
pub mod second_order;
pub mod stieltjes_integral;

pub use num_complex::Complex64;

pub use derivator::{ContinuousKind, ContinuousPart, Derivator, FlatComponent, Jump, JumpSet, PointClass};
pub use error::{Error, Result};
pub use first_order::{Coefficient, GExp};
pub use stieltjes_integral::{GFunction, Integrand, QuadratureSettings};

/// Offset used for right limits `t^+` when no exact value is available.
pub fn right_offset(horizon: f64) -> f64 {
    1e-9 * horizon.max(1.0)
}
