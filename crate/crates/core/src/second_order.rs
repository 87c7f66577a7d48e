//! Second-order problems with constant coefficients,
//! `v''_g + P v'_g + Q v = f`, `v(0) = x₀`, `v'_g(0) = v₀`.
//!
//! Roots of `λ² + Pλ + Q = 0` are computed in complex arithmetic. Nearly equal
//! roots (`|λ₁ − λ₂| < 1e-8·(1 + |λ₁|)`) are treated as a double root
//! `λ = −P/2`, which avoids the `(λ₁ − λ₂)^{-1}` cancellation.
//!
//! Besides `v`, every solution exposes its g-derivative in closed form through
//! the factorisation `v' = u + λ₂ v`, where `u` solves the first-order problem
//! `u' = λ₁ u + f`, `u(0) = v₀ − λ₂ x₀`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::derivator::Derivator;
use crate::error::{Error, Result};
use crate::first_order::{GExp, GreenKernel};
use crate::stieltjes_integral::{ls_integral, GFunction, Integrand, QuadratureSettings};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative root separation under which the double-root formulas are used.
pub const DOUBLE_ROOT_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct SecondOrderProblem {
    pub p: Complex64,
    pub q: Complex64,
    pub x0: Complex64,
    pub v0: Complex64,
    pub f: Option<Integrand>,
}

impl SecondOrderProblem {
    pub fn homogeneous(p: Complex64, q: Complex64, x0: Complex64, v0: Complex64) -> Self {
        SecondOrderProblem { p, q, x0, v0, f: None }
    }

    pub fn with_source(mut self, f: Integrand) -> Self {
        self.f = Some(f);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Roots {
    Distinct(Complex64, Complex64),
    Double(Complex64),
}

impl Roots {
    /// `(λ₁, λ₂)`; equal for a double root.
    pub fn pair(&self) -> (Complex64, Complex64) {
        match *self {
            Roots::Distinct(a, b) => (a, b),
            Roots::Double(l) => (l, l),
        }
    }
}

/// `λ₁,₂ = (−P ± √(P² − 4Q))/2`, merged into a double root when nearly equal.
pub fn characteristic_roots(p: Complex64, q: Complex64) -> Roots {
    let disc = (p * p - 4.0 * q).sqrt();
    let l1 = (-p + disc) * 0.5;
    let l2 = (-p - disc) * 0.5;
    if (l1 - l2).norm() < DOUBLE_ROOT_TOL * (1.0 + l1.norm()) {
        Roots::Double(-p * 0.5)
    } else {
        Roots::Distinct(l1, l2)
    }
}

pub(crate) fn validated_exp(d: &Arc<Derivator>, lambda: Complex64, module: &'static str) -> Result<GExp> {
    let e = GExp::shared(Arc::clone(d), lambda)?;
    if let Some(t) = e.truncation() {
        return Err(Error::RootValidation {
            module,
            root_re: lambda.re,
            root_im: lambda.im,
            t,
        });
    }
    Ok(e)
}

#[derive(Debug, Clone)]
enum Basis {
    Distinct { l1: Complex64, l2: Complex64, e1: GExp, e2: GExp },
    Double { l: Complex64, e: GExp },
}

/// A closed-form solution `v`, evaluable with exact right limits, together
/// with its closed-form g-derivative.
#[derive(Debug, Clone)]
pub struct SecondOrderSolution {
    basis: Basis,
    prob: SecondOrderProblem,
    quad: QuadratureSettings,
}

/// Value and right limit of an accumulated quantity at one time.
#[derive(Clone, Copy)]
struct Pair {
    at: Complex64,
    right: Complex64,
}

impl SecondOrderSolution {
    fn build(d: &Derivator, prob: SecondOrderProblem) -> Result<Self> {
        let d = Arc::new(d.clone());
        let basis = match characteristic_roots(prob.p, prob.q) {
            Roots::Distinct(l1, l2) => Basis::Distinct {
                l1,
                l2,
                e1: validated_exp(&d, l1, "second_order")?,
                e2: validated_exp(&d, l2, "second_order")?,
            },
            Roots::Double(l) => Basis::Double {
                l,
                e: validated_exp(&d, l, "second_order")?,
            },
        };
        Ok(SecondOrderSolution {
            basis,
            prob,
            quad: QuadratureSettings::default(),
        })
    }

    pub fn roots(&self) -> Roots {
        match &self.basis {
            Basis::Distinct { l1, l2, .. } => Roots::Distinct(*l1, *l2),
            Basis::Double { l, .. } => Roots::Double(*l),
        }
    }

    pub fn problem(&self) -> &SecondOrderProblem {
        &self.prob
    }

    fn derivator(&self) -> &Derivator {
        match &self.basis {
            Basis::Distinct { e1, .. } => e1.derivator(),
            Basis::Double { e, .. } => e.derivator(),
        }
    }

    fn check(&self, t: f64) -> Result<()> {
        let t_end = self.derivator().horizon();
        if t >= 0.0 && t <= t_end {
            Ok(())
        } else {
            Err(Error::domain("second_order", format!("time {t} outside [0, {t_end}]")))
        }
    }

    /// `∫_{[0,t)} E^{-1} f/(1+λΔ) dμ_g` and its right limit.
    fn j(&self, e: &GExp, t: f64) -> Result<Pair> {
        let Some(f) = self.prob.f.clone() else {
            return Ok(Pair { at: ZERO, right: ZERO });
        };
        let e2 = e.clone();
        let h = move |s: f64| e2.inverse(s).unwrap_or(ZERO) * f.eval(s) / e2.factor_at(s);
        let at = ls_integral(e.derivator(), &h, t, &self.quad)?;
        let dl = e.derivator().jump_at(t);
        let right = if dl > 0.0 { at + h(t) * dl } else { at };
        Ok(Pair { at, right })
    }

    /// `H1(t) = ∫_{[0,t)} 1/(1+λΔ) dμ_g = g^C(t) + Σ_{t_k<t} Δ_k/(1+λΔ_k)`.
    pub fn h1(d: &Derivator, lambda: Complex64, t: f64) -> Complex64 {
        let js = d.jump_set();
        let n = js.count_before(t);
        let jumps: Complex64 = js.as_slice()[..n]
            .iter()
            .map(|j| j.delta / (ONE + lambda * j.delta))
            .sum();
        jumps + d.g_cont(t)
    }

    fn exp_pair(e: &GExp, t: f64) -> Result<Pair> {
        Ok(Pair {
            at: e.value(t)?,
            right: e.value_right(t)?,
        })
    }

    /// Homogeneous part `v_h` and its right limit.
    fn homogeneous_pair(&self, t: f64) -> Result<Pair> {
        let (x0, v0) = (self.prob.x0, self.prob.v0);
        match &self.basis {
            Basis::Distinct { l1, l2, e1, e2 } => {
                let c1 = (v0 - l2 * x0) / (l1 - l2);
                let c2 = -(v0 - l1 * x0) / (l1 - l2);
                let (a, b) = (Self::exp_pair(e1, t)?, Self::exp_pair(e2, t)?);
                Ok(Pair {
                    at: c1 * a.at + c2 * b.at,
                    right: c1 * a.right + c2 * b.right,
                })
            }
            Basis::Double { l, e } => {
                let d = e.derivator();
                let ep = Self::exp_pair(e, t)?;
                let h = Self::h1(d, *l, t);
                let dl = d.jump_at(t);
                let h_r = if dl > 0.0 { h + dl / (ONE + l * dl) } else { h };
                let c = v0 - l * x0;
                Ok(Pair {
                    at: ep.at * (x0 + c * h),
                    right: ep.right * (x0 + c * h_r),
                })
            }
        }
    }

    /// Particular part `v_p` (zero initial data) and its right limit.
    fn particular_pair(&self, t: f64) -> Result<Pair> {
        if self.prob.f.is_none() {
            return Ok(Pair { at: ZERO, right: ZERO });
        }
        match &self.basis {
            Basis::Distinct { l1, l2, e1, e2 } => {
                let (a, b) = (Self::exp_pair(e1, t)?, Self::exp_pair(e2, t)?);
                let (j1, j2) = (self.j(e1, t)?, self.j(e2, t)?);
                let k = (l1 - l2).inv();
                Ok(Pair {
                    at: k * (a.at * j1.at - b.at * j2.at),
                    right: k * (a.right * j1.right - b.right * j2.right),
                })
            }
            Basis::Double { l, e } => {
                let l = *l;
                let d = e.derivator();
                let f = self.prob.f.clone().expect("checked above");
                let ep = Self::exp_pair(e, t)?;
                let jp = self.j(e, t)?;
                let h = Self::h1(d, l, t);
                let dl = d.jump_at(t);
                let fac = ONE + l * dl;
                let h_r = if dl > 0.0 { h + dl / fac } else { h };
                // K(t) = ∫_{[0,t)} H1(s) E(s)^{-1} f(s)/(1+λΔ(s)) dμ_g
                let (e2, f2, dd) = (e.clone(), f.clone(), e.derivator_arc().clone());
                let kf = move |s: f64| {
                    Self::h1(&dd, l, s) * e2.inverse(s).unwrap_or(ZERO) * f2.eval(s) / e2.factor_at(s)
                };
                let k_at = ls_integral(d, &kf, t, &self.quad)?;
                let k_r = if dl > 0.0 { k_at + kf(t) * dl } else { k_at };
                // S(t) = Σ_{t_k<t} E(t_k)^{-1} f(t_k) Δ_k²/(1+λΔ_k)²
                let js = d.jump_set();
                let n = js.count_before(t);
                let mut s_at = ZERO;
                for jk in &js.as_slice()[..n] {
                    let fk = ONE + l * jk.delta;
                    s_at += e.inverse(jk.t)? * f.eval(jk.t) * jk.delta * jk.delta / (fk * fk);
                }
                let s_r = if dl > 0.0 {
                    s_at + e.inverse(t)? * f.eval(t) * dl * dl / (fac * fac)
                } else {
                    s_at
                };
                Ok(Pair {
                    at: ep.at * (h * jp.at - k_at - s_at),
                    right: ep.right * (h_r * jp.right - k_r - s_r),
                })
            }
        }
    }

    /// `v_h(t)`.
    pub fn homogeneous(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        Ok(self.homogeneous_pair(t)?.at)
    }

    /// `v_p(t)`, the particular solution with `v_p(0) = (v_p)'_g(0) = 0`.
    pub fn particular(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        Ok(self.particular_pair(t)?.at)
    }

    pub fn particular_right(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        Ok(self.particular_pair(t)?.right)
    }

    pub fn value(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        Ok(self.homogeneous_pair(t)?.at + self.particular_pair(t)?.at)
    }

    pub fn value_right(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        Ok(self.homogeneous_pair(t)?.right + self.particular_pair(t)?.right)
    }

    /// `u(t) = E₁(t)[(v₀ − λ₂x₀) + J₁(t)]` and its right limit.
    fn companion(&self, t: f64) -> Result<(Complex64, Pair)> {
        let (l2, e1) = match &self.basis {
            Basis::Distinct { l2, e1, .. } => (*l2, e1),
            Basis::Double { l, e } => (*l, e),
        };
        let ep = Self::exp_pair(e1, t)?;
        let jp = self.j(e1, t)?;
        let c = self.prob.v0 - l2 * self.prob.x0;
        Ok((
            l2,
            Pair {
                at: ep.at * (c + jp.at),
                right: ep.right * (c + jp.right),
            },
        ))
    }

    /// Closed-form `v'_g(t) = u(t) + λ₂ v(t)`.
    pub fn derivative(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        let (l2, u) = self.companion(t)?;
        Ok(u.at + l2 * self.value(t)?)
    }

    /// `lim_{s→t⁺} v'_g(s) = u(t⁺) + λ₂ v(t⁺)`.
    pub fn derivative_right(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        let (l2, u) = self.companion(t)?;
        Ok(u.right + l2 * self.value_right(t)?)
    }

    /// The closed-form g-derivative as a function.
    pub fn derivative_fn(&self) -> Integrand {
        let (a, b) = (self.clone(), self.clone());
        Integrand::with_right_limit(
            move |t| a.derivative(t).unwrap_or(nan()),
            move |t| b.derivative_right(t).unwrap_or(nan()),
        )
    }

    /// `v_p` as a function.
    pub fn particular_fn(&self) -> Integrand {
        let (a, b) = (self.clone(), self.clone());
        Integrand::with_right_limit(
            move |t| a.particular(t).unwrap_or(nan()),
            move |t| b.particular_right(t).unwrap_or(nan()),
        )
    }
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

impl GFunction for SecondOrderSolution {
    fn eval(&self, t: f64) -> Complex64 {
        self.value(t).unwrap_or(nan())
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        self.value_right(t).ok()
    }
}

/// Solution of the homogeneous problem. The problem must carry no source.
pub fn solve_homogeneous(d: &Derivator, prob: &SecondOrderProblem) -> Result<SecondOrderSolution> {
    if prob.f.is_some() {
        return Err(Error::domain(
            "second_order",
            "solve_homogeneous called with a source term; use solve_nonhomogeneous",
        ));
    }
    SecondOrderSolution::build(d, prob.clone())
}

/// Solution with source `f` (zero if absent): homogeneous part plus the
/// single-integral particular solution.
pub fn solve_nonhomogeneous(d: &Derivator, prob: &SecondOrderProblem) -> Result<SecondOrderSolution> {
    SecondOrderSolution::build(d, prob.clone())
}

/// The second-order Green's kernel, so that `v_p(t) = ∫_{[0,t)} G(t,r) f(r) dμ_g(r)`.
#[derive(Debug, Clone)]
pub struct SecondOrderGreen {
    basis: Basis,
}

impl SecondOrderGreen {
    pub fn roots(&self) -> Roots {
        match &self.basis {
            Basis::Distinct { l1, l2, .. } => Roots::Distinct(*l1, *l2),
            Basis::Double { l, .. } => Roots::Double(*l),
        }
    }
}

impl GreenKernel for SecondOrderGreen {
    fn derivator(&self) -> &Derivator {
        match &self.basis {
            Basis::Distinct { e1, .. } => e1.derivator(),
            Basis::Double { e, .. } => e.derivator(),
        }
    }

    fn kernel(&self, t: f64, r: f64) -> Result<Complex64> {
        if !(r >= 0.0 && r < t) {
            return Ok(ZERO);
        }
        match &self.basis {
            Basis::Distinct { l1, l2, e1, e2 } => {
                let a = e1.value(t)? * e1.inverse(r)? / e1.factor_at(r);
                let b = e2.value(t)? * e2.inverse(r)? / e2.factor_at(r);
                Ok((a - b) / (l1 - l2))
            }
            Basis::Double { l, e } => {
                let d = e.derivator();
                let fac = e.factor_at(r);
                let bracket = SecondOrderSolution::h1(d, *l, t) - SecondOrderSolution::h1(d, *l, r) - d.jump_at(r) / fac;
                Ok(e.value(t)? * e.inverse(r)? / fac * bracket)
            }
        }
    }
}

pub fn green_second_order(d: &Derivator, p: Complex64, q: Complex64) -> Result<SecondOrderGreen> {
    let d = Arc::new(d.clone());
    let basis = match characteristic_roots(p, q) {
        Roots::Distinct(l1, l2) => Basis::Distinct {
            l1,
            l2,
            e1: validated_exp(&d, l1, "second_order")?,
            e2: validated_exp(&d, l2, "second_order")?,
        },
        Roots::Double(l) => Basis::Double {
            l,
            e: validated_exp(&d, l, "second_order")?,
        },
    };
    Ok(SecondOrderGreen { basis })
}
