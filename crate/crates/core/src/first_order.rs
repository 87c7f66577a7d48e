//! First-order linear problems `v'_g = β v + f`.
//!
//! The g-exponential is evaluated as a direct product over jumps times the
//! exponential of the continuous-part integral of `β`. Jump products are
//! cached as prefixes so each query costs one binary search plus one
//! continuous-part evaluation.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::derivator::Derivator;
use crate::error::{Error, Result};
use crate::stieltjes_integral::{continuous_integral, ls_integral, GFunction, Integrand, QuadratureSettings};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

type CoefFn = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;
type DeltaFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A coefficient `β(t)`.
///
/// Coefficients derived from others (powers, products, modulated arguments)
/// depend on the local jump size `Δ⁺g(t)`, so every variant is evaluated as a
/// function of `(t, Δ⁺g(t))`.
#[derive(Clone)]
pub enum Coefficient {
    Constant(Complex64),
    /// `β(t) = h(Δ⁺g(t))`: constant `h(0)` away from jumps. The continuous-part
    /// integral is then exact.
    JumpModulated(DeltaFn),
    /// A general coefficient `(t, Δ⁺g(t)) ↦ β(t)`.
    Function(CoefFn),
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Constant(c) => write!(f, "Constant({c})"),
            Coefficient::JumpModulated(_) => f.write_str("JumpModulated(..)"),
            Coefficient::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl From<Complex64> for Coefficient {
    fn from(c: Complex64) -> Self {
        Coefficient::Constant(c)
    }
}

impl From<f64> for Coefficient {
    fn from(c: f64) -> Self {
        Coefficient::Constant(Complex64::new(c, 0.0))
    }
}

impl Coefficient {
    /// A time-dependent coefficient that does not depend on the jump size.
    pub fn function(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Coefficient::Function(Arc::new(move |t, _| f(t)))
    }

    pub fn eval(&self, t: f64, delta: f64) -> Complex64 {
        match self {
            Coefficient::Constant(c) => *c,
            Coefficient::JumpModulated(h) => h(delta),
            Coefficient::Function(h) => h(t, delta),
        }
    }

    /// `β(t)` with `Δ⁺g(t)` read from `d`.
    pub fn at(&self, d: &Derivator, t: f64) -> Complex64 {
        self.eval(t, d.jump_at(t))
    }

    fn is_jump_only(&self) -> bool {
        !matches!(self, Coefficient::Function(_))
    }

    /// Pointwise transform `β ↦ op(β, Δ⁺g)`.
    pub fn map(&self, op: impl Fn(Complex64, f64) -> Complex64 + Send + Sync + 'static) -> Coefficient {
        match self {
            Coefficient::Constant(c) => {
                let c = *c;
                Coefficient::JumpModulated(Arc::new(move |dl| op(c, dl)))
            }
            Coefficient::JumpModulated(h) => {
                let h = Arc::clone(h);
                Coefficient::JumpModulated(Arc::new(move |dl| op(h(dl), dl)))
            }
            Coefficient::Function(h) => {
                let h = Arc::clone(h);
                Coefficient::Function(Arc::new(move |t, dl| op(h(t, dl), dl)))
            }
        }
    }

    /// Pointwise combination `(β₁, β₂) ↦ op(β₁, β₂, Δ⁺g)`.
    pub fn zip(&self, other: &Coefficient, op: impl Fn(Complex64, Complex64, f64) -> Complex64 + Send + Sync + 'static) -> Coefficient {
        let a = self.clone();
        let b = other.clone();
        if a.is_jump_only() && b.is_jump_only() {
            Coefficient::JumpModulated(Arc::new(move |dl| op(a.eval(0.0, dl), b.eval(0.0, dl), dl)))
        } else {
            Coefficient::Function(Arc::new(move |t, dl| op(a.eval(t, dl), b.eval(t, dl), dl)))
        }
    }

    /// Complex conjugate coefficient.
    pub fn conj(&self) -> Coefficient {
        self.map(|b, _| b.conj())
    }

    /// `p_n(β) = nβ + Σ_{k=2}^{n} C(n,k) β^k Δ^{k-1}`, so that
    /// `exp_g(β)^n = exp_g(p_n(β))`.
    pub fn power_coefficient(&self, n: u32) -> Coefficient {
        self.map(move |b, dl| {
            let mut s = b * n as f64;
            let mut binom = n as f64;
            for k in 2..=n {
                binom = binom * (n - k + 1) as f64 / k as f64;
                s += b.powu(k) * binom * dl.powi(k as i32 - 1);
            }
            s
        })
    }

    /// `q_n(β) = −p_n(β) / (1 + p_n(β)Δ)`, so that `exp_g(β)^{−n} = exp_g(q_n(β))`.
    pub fn inverse_power_coefficient(&self, n: u32) -> Coefficient {
        self.power_coefficient(n).map(|p, dl| -p / (ONE + p * dl))
    }

    /// `β₁ + β₂ + β₁β₂Δ`, the coefficient of `exp_g(β₁)·exp_g(β₂)`.
    pub fn product_law(&self, other: &Coefficient) -> Coefficient {
        self.zip(other, |a, b, dl| a + b + a * b * dl)
    }

    /// `−β/(1+βΔ)`, the coefficient of `exp_g(β)^{−1}`.
    pub fn inverse(&self) -> Coefficient {
        self.map(|b, dl| -b / (ONE + b * dl))
    }

    /// `b/(1+aΔ)` with `self = b`.
    pub fn modulated_by(&self, a: &Coefficient) -> Coefficient {
        self.zip(a, |b, a, dl| b / (ONE + a * dl))
    }
}

/// Continuous-part integral `∫_{[0,t)} β dμ_{g^C}` for general coefficients,
/// with values cached at the breakpoints of `g` and quadrature only from the
/// nearest cached anchor.
#[derive(Clone)]
struct AnchoredIntegral {
    anchors: Vec<(f64, Complex64)>,
    beta: Coefficient,
    quad: QuadratureSettings,
}

impl AnchoredIntegral {
    fn build(d: &Derivator, beta: &Coefficient, quad: QuadratureSettings) -> Result<Self> {
        let b = beta.clone();
        let f = move |t: f64| b.eval(t, 0.0);
        let mut anchors = vec![(0.0, ZERO)];
        let mut acc = ZERO;
        let mut last = 0.0;
        for &p in d.breakpoints().iter().chain(std::iter::once(&d.horizon())) {
            acc += continuous_integral(d, &f, last, p, &quad)?;
            anchors.push((p, acc));
            last = p;
        }
        Ok(AnchoredIntegral {
            anchors,
            beta: beta.clone(),
            quad,
        })
    }

    fn value(&self, d: &Derivator, t: f64) -> Result<Complex64> {
        let i = self.anchors.partition_point(|a| a.0 <= t) - 1;
        let (a, base) = self.anchors[i];
        if a == t {
            return Ok(base);
        }
        let b = self.beta.clone();
        let f = move |s: f64| b.eval(s, 0.0);
        Ok(base + continuous_integral(d, &f, a, t, &self.quad)?)
    }
}

#[derive(Clone)]
enum ContinuousExponent {
    /// `∫ β dμ_{g^C} = c·g^C(t)`.
    Linear(Complex64),
    Anchored(AnchoredIntegral),
}

/// `exp_g(β; 0, ·)`: the solution of `v'_g = βv`, `v(0) = 1`.
///
/// The value vanishes after the first jump `t⁰_β` where `1 + βΔ⁺g = 0`
/// (if any) and is non-invertible from there on.
#[derive(Clone)]
pub struct GExp {
    d: Arc<Derivator>,
    beta: Coefficient,
    factors: Vec<Complex64>,
    // prefix[i] is the product of the first i factors (truncated factor excluded)
    prefix: Vec<Complex64>,
    truncation: Option<(usize, f64)>,
    exponent: ContinuousExponent,
}

impl fmt::Debug for GExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GExp")
            .field("beta", &self.beta)
            .field("truncation", &self.truncation)
            .finish_non_exhaustive()
    }
}

/// Tolerance under which a jump factor `1 + βΔ` counts as exactly zero.
pub const ZERO_FACTOR_TOL: f64 = 1e-14;
/// Tolerance under which a jump factor triggers a conditioning warning.
pub const NEAR_ZERO_FACTOR_WARN: f64 = 1e-10;

impl GExp {
    pub fn new(d: &Derivator, beta: impl Into<Coefficient>) -> Result<Self> {
        Self::with_quadrature(Arc::new(d.clone()), beta.into(), QuadratureSettings::default())
    }

    pub fn shared(d: Arc<Derivator>, beta: impl Into<Coefficient>) -> Result<Self> {
        Self::with_quadrature(d, beta.into(), QuadratureSettings::default())
    }

    pub fn with_quadrature(d: Arc<Derivator>, beta: Coefficient, quad: QuadratureSettings) -> Result<Self> {
        let mut factors = Vec::with_capacity(d.jumps().len());
        let mut prefix = Vec::with_capacity(d.jumps().len() + 1);
        let mut truncation = None;
        let mut acc = ONE;
        prefix.push(acc);
        for (k, j) in d.jumps().iter().enumerate() {
            let bd = beta.eval(j.t, j.delta) * j.delta;
            let mut fac = ONE + bd;
            let scale = bd.norm().max(1.0);
            if fac.norm() <= ZERO_FACTOR_TOL * scale {
                fac = ZERO;
            } else if fac.norm() <= NEAR_ZERO_FACTOR_WARN * scale {
                log::warn!(
                    "[first_order] jump factor 1 + beta*delta = {fac} at t = {} is nearly zero",
                    j.t
                );
            }
            factors.push(fac);
            if truncation.is_none() {
                if fac == ZERO {
                    truncation = Some((k, j.t));
                } else {
                    acc *= fac;
                }
            }
            prefix.push(if truncation.is_some() { ZERO } else { acc });
        }
        let exponent = if beta.is_jump_only() {
            ContinuousExponent::Linear(beta.eval(0.0, 0.0))
        } else {
            ContinuousExponent::Anchored(AnchoredIntegral::build(&d, &beta, quad)?)
        };
        Ok(GExp {
            d,
            beta,
            factors,
            prefix,
            truncation,
            exponent,
        })
    }

    pub fn derivator(&self) -> &Derivator {
        &self.d
    }

    pub fn derivator_arc(&self) -> &Arc<Derivator> {
        &self.d
    }

    pub fn coefficient(&self) -> &Coefficient {
        &self.beta
    }

    /// `(t_k, 1 + β(t_k)Δ⁺g(t_k))` for every jump.
    pub fn jump_factors(&self) -> Vec<(f64, Complex64)> {
        self.d.jumps().iter().map(|j| j.t).zip(self.factors.iter().copied()).collect()
    }

    /// `t⁰_β`, or `None` when no factor vanishes.
    pub fn truncation(&self) -> Option<f64> {
        self.truncation.map(|(_, t)| t)
    }

    /// `t⁰_β`, or `T` when no factor vanishes.
    pub fn truncation_time(&self) -> f64 {
        self.truncation().unwrap_or(self.d.horizon())
    }

    /// `∫_{[0,t)} β dμ_{g^C}`.
    pub fn continuous_exponent(&self, t: f64) -> Result<Complex64> {
        match &self.exponent {
            ContinuousExponent::Linear(c) => Ok(c * self.d.g_cont(t)),
            ContinuousExponent::Anchored(a) => a.value(&self.d, t),
        }
    }

    /// `Π_{t_k<t} (1 + β(t_k)Δ⁺g(t_k))`.
    pub fn jump_product(&self, t: f64) -> Complex64 {
        self.prefix[self.d.jump_set().count_before(t)]
    }

    fn check(&self, t: f64) -> Result<()> {
        if t >= 0.0 && t <= self.d.horizon() {
            Ok(())
        } else {
            Err(Error::domain(
                "first_order",
                format!("time {t} outside [0, {}]", self.d.horizon()),
            ))
        }
    }

    /// `exp_g(β; 0, t)`.
    pub fn value(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        let p = self.jump_product(t);
        if p == ZERO {
            return Ok(ZERO);
        }
        Ok(p * self.continuous_exponent(t)?.exp())
    }

    /// `exp_g(β; 0, t^+) = (1 + β(t)Δ⁺g(t)) exp_g(β; 0, t)`.
    pub fn value_right(&self, t: f64) -> Result<Complex64> {
        let v = self.value(t)?;
        Ok(match self.d.jump_set().as_slice().binary_search_by(|j| j.t.total_cmp(&t)) {
            Ok(k) => v * self.factors[k],
            Err(_) => v,
        })
    }

    /// `exp_g(β; 0, t)^{-1}`, defined for `t ≤ t⁰_β`.
    pub fn inverse(&self, t: f64) -> Result<Complex64> {
        if let Some(t0) = self.truncation() {
            if t > t0 {
                return Err(Error::Truncation { t, t0 });
            }
        }
        self.check(t)?;
        Ok(self.jump_product(t).inv() * (-self.continuous_exponent(t)?).exp())
    }

    /// The factor `1 + β(t)Δ⁺g(t)` (1 off jumps).
    pub fn factor_at(&self, t: f64) -> Complex64 {
        match self.d.jump_set().as_slice().binary_search_by(|j| j.t.total_cmp(&t)) {
            Ok(k) => self.factors[k],
            Err(_) => ONE,
        }
    }
}

impl GFunction for GExp {
    fn eval(&self, t: f64) -> Complex64 {
        self.value(t).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        self.value_right(t).ok()
    }
}

/// `exp_g(β; 0, ·)`; see [`GExp`].
pub fn g_exp(d: &Derivator, beta: impl Into<Coefficient>) -> Result<GExp> {
    GExp::new(d, beta)
}

/// g-sine and g-cosine of a coefficient `b`:
/// `sin_g = (exp_g(ib) − exp_g(−ib))/(2i)`, `cos_g = (exp_g(ib) + exp_g(−ib))/2`.
///
/// For real `b` these are the imaginary and real parts of `exp_g(ib)`.
#[derive(Debug, Clone)]
pub struct GSinCos {
    plus: GExp,
    minus: GExp,
}

impl GSinCos {
    pub fn new(d: Arc<Derivator>, b: impl Into<Coefficient>) -> Result<Self> {
        let b = b.into();
        let i = Complex64::new(0.0, 1.0);
        let plus = GExp::shared(Arc::clone(&d), b.map(move |x, _| i * x))?;
        let minus = GExp::shared(d, b.map(move |x, _| -i * x))?;
        Ok(GSinCos { plus, minus })
    }

    pub fn sin(&self, t: f64) -> Result<Complex64> {
        Ok((self.plus.value(t)? - self.minus.value(t)?) / Complex64::new(0.0, 2.0))
    }

    pub fn cos(&self, t: f64) -> Result<Complex64> {
        Ok((self.plus.value(t)? + self.minus.value(t)?) * 0.5)
    }

    pub fn sin_right(&self, t: f64) -> Result<Complex64> {
        Ok((self.plus.value_right(t)? - self.minus.value_right(t)?) / Complex64::new(0.0, 2.0))
    }

    pub fn cos_right(&self, t: f64) -> Result<Complex64> {
        Ok((self.plus.value_right(t)? + self.minus.value_right(t)?) * 0.5)
    }

    /// `exp_g(ib; 0, ·)`.
    pub fn exp_plus(&self) -> &GExp {
        &self.plus
    }

    pub fn sin_fn(&self) -> Integrand {
        let (a, b) = (self.clone(), self.clone());
        Integrand::with_right_limit(move |t| a.sin(t).unwrap_or(nan()), move |t| b.sin_right(t).unwrap_or(nan()))
    }

    pub fn cos_fn(&self) -> Integrand {
        let (a, b) = (self.clone(), self.clone());
        Integrand::with_right_limit(move |t| a.cos(t).unwrap_or(nan()), move |t| b.cos_right(t).unwrap_or(nan()))
    }
}

fn nan() -> Complex64 {
    Complex64::new(f64::NAN, f64::NAN)
}

/// `(sin_g(b; 0, ·), cos_g(b; 0, ·))`.
pub fn g_sin_cos(d: &Derivator, b: impl Into<Coefficient>) -> Result<GSinCos> {
    GSinCos::new(Arc::new(d.clone()), b)
}

/// Solution of `v'_g = βv + f`, `v(0) = v₀`, by variation of constants:
/// `v(t) = v₀E(t) + E(t)∫_{[0,t)} E(s)^{-1} f(s)/(1+β(s)Δ⁺g(s)) dμ_g(s)`.
#[derive(Debug, Clone)]
pub struct FirstOrderSolution {
    exp: GExp,
    f: Integrand,
    v0: Complex64,
    quad: QuadratureSettings,
}

impl FirstOrderSolution {
    pub fn g_exp(&self) -> &GExp {
        &self.exp
    }

    fn check(&self, t: f64) -> Result<()> {
        if let Some(t0) = self.exp.truncation() {
            if t > t0 {
                return Err(Error::Truncation { t, t0 });
            }
        }
        Ok(())
    }

    /// `∫_{[0,t)} E(s)^{-1} f(s)/(1+β(s)Δ⁺g(s)) dμ_g(s)`.
    pub fn particular_integral(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        let e = self.exp.clone();
        let f = self.f.clone();
        let h = move |s: f64| e.inverse(s).unwrap_or(nan()) * f.eval(s) / e.factor_at(s);
        ls_integral(self.exp.derivator(), &h, t, &self.quad)
    }

    pub fn value(&self, t: f64) -> Result<Complex64> {
        self.check(t)?;
        let e = self.exp.value(t)?;
        Ok(e * (self.v0 + self.particular_integral(t)?))
    }

    /// `v(t^+) = (1 + β(t)Δ⁺g(t)) v(t) + f(t)Δ⁺g(t)`.
    pub fn value_right(&self, t: f64) -> Result<Complex64> {
        let v = self.value(t)?;
        let dl = self.exp.derivator().jump_at(t);
        if dl == 0.0 {
            return Ok(v);
        }
        Ok(self.exp.factor_at(t) * v + self.f.eval(t) * dl)
    }
}

impl GFunction for FirstOrderSolution {
    fn eval(&self, t: f64) -> Complex64 {
        self.value(t).unwrap_or(nan())
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        self.value_right(t).ok()
    }
}

pub fn solve_first_order(d: &Derivator, beta: impl Into<Coefficient>, f: Integrand, v0: Complex64) -> Result<FirstOrderSolution> {
    Ok(FirstOrderSolution {
        exp: GExp::new(d, beta)?,
        f,
        v0,
        quad: QuadratureSettings::default(),
    })
}

/// A Green's kernel `G(t, r)` supported on `0 ≤ r < t`.
pub trait GreenKernel: Send + Sync {
    fn derivator(&self) -> &Derivator;

    fn kernel(&self, t: f64, r: f64) -> Result<Complex64>;

    /// `∫_{[0,t)} G(t, r) f(r) dμ_g(r)`.
    fn convolve(&self, f: &dyn GFunction, t: f64, q: &QuadratureSettings) -> Result<Complex64> {
        let h = |r: f64| self.kernel(t, r).unwrap_or(nan()) * f.eval(r);
        ls_integral(self.derivator(), &h, t, q)
    }
}

/// `G(t, s) = E(t)E(s)^{-1}/(1+β(s)Δ⁺g(s)) χ_{[0,t)}(s)`.
#[derive(Debug, Clone)]
pub struct FirstOrderGreen {
    exp: GExp,
}

impl GreenKernel for FirstOrderGreen {
    fn derivator(&self) -> &Derivator {
        self.exp.derivator()
    }

    fn kernel(&self, t: f64, s: f64) -> Result<Complex64> {
        if !(s >= 0.0 && s < t) {
            return Ok(ZERO);
        }
        if let Some(t0) = self.exp.truncation() {
            if t > t0 {
                return Err(Error::Truncation { t, t0 });
            }
        }
        Ok(self.exp.value(t)? * self.exp.inverse(s)? / self.exp.factor_at(s))
    }
}

pub fn green_first_order(d: &Derivator, beta: impl Into<Coefficient>) -> Result<FirstOrderGreen> {
    Ok(FirstOrderGreen { exp: GExp::new(d, beta)? })
}

/// Maximum deviations found by [`g_exp_properties_check`], each relative to
/// `max(1, |reference|)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PropertyReport {
    /// `conj(exp_g(β)) = exp_g(conj β)`.
    pub conjugation: f64,
    /// `exp_g(β)^n = exp_g(p_n(β))`.
    pub power: f64,
    /// `exp_g(β)^{-n} = exp_g(q_n(β))`.
    pub inverse_power: f64,
    /// `exp_g(β₁)exp_g(β₂) = exp_g(β₁+β₂+β₁β₂Δ⁺g)`.
    pub product: f64,
    /// `exp_g(β)·exp_g(−β/(1+βΔ⁺g)) = 1`.
    pub inverse_identity: f64,
}

impl PropertyReport {
    pub fn max(&self) -> f64 {
        [
            self.conjugation,
            self.power,
            self.inverse_power,
            self.product,
            self.inverse_identity,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn rel_dev(a: Complex64, reference: Complex64) -> f64 {
    (a - reference).norm() / reference.norm().max(1.0)
}

/// Checks the algebraic properties of the g-exponential at the sample times.
/// Sample times past `t⁰_β` are rejected because the inverse is undefined there.
pub fn g_exp_properties_check(
    d: &Derivator,
    beta: &Coefficient,
    beta2: &Coefficient,
    n: u32,
    samples: &[f64],
) -> Result<PropertyReport> {
    if n < 2 {
        return Err(Error::domain("first_order", "property check needs n >= 2"));
    }
    let d = Arc::new(d.clone());
    let e = GExp::shared(Arc::clone(&d), beta.clone())?;
    let e_conj = GExp::shared(Arc::clone(&d), beta.conj())?;
    let e_pow = GExp::shared(Arc::clone(&d), beta.power_coefficient(n))?;
    let e_ipow = GExp::shared(Arc::clone(&d), beta.inverse_power_coefficient(n))?;
    let e2 = GExp::shared(Arc::clone(&d), beta2.clone())?;
    let e_prod = GExp::shared(Arc::clone(&d), beta.product_law(beta2))?;
    let e_inv = GExp::shared(Arc::clone(&d), beta.inverse())?;
    let t0 = e.truncation_time();
    let mut r = PropertyReport::default();
    for &t in samples {
        if e.truncation().is_some() && t > t0 {
            return Err(Error::domain(
                "first_order",
                format!("sample {t} lies past the truncation time {t0}"),
            ));
        }
        let v = e.value(t)?;
        r.conjugation = r.conjugation.max(rel_dev(v.conj(), e_conj.value(t)?));
        r.power = r.power.max(rel_dev(v.powu(n), e_pow.value(t)?));
        r.inverse_power = r.inverse_power.max(rel_dev(e.inverse(t)?.powu(n), e_ipow.value(t)?));
        r.product = r.product.max(rel_dev(v * e2.value(t)?, e_prod.value(t)?));
        r.inverse_identity = r.inverse_identity.max(rel_dev(v * e_inv.value(t)?, ONE));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivator::{ContinuousPart, JumpSet};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn one_jump(t: f64, delta: f64, horizon: f64) -> Derivator {
        Derivator::pure_jump(horizon, [(t, delta)]).unwrap()
    }

    #[test]
    fn classical_exponential() {
        let d = Derivator::identity(2.0).unwrap();
        let lam = Complex64::new(-0.3, 1.1);
        let e = g_exp(&d, lam).unwrap();
        for &t in &[0.0, 0.5, 1.3, 2.0] {
            assert!((e.value(t).unwrap() - (lam * t).exp()).norm() < 1e-14);
        }
        assert_eq!(e.truncation_time(), 2.0);
    }

    #[test]
    fn single_jump_factor() {
        let d = one_jump(0.5, 1.0, 1.0);
        let e = g_exp(&d, 1.0).unwrap();
        assert_eq!(e.value(1.0).unwrap(), c(2.0));
        assert_eq!(e.value(0.5).unwrap(), c(1.0));
        assert_eq!(e.value_right(0.5).unwrap(), c(2.0));
    }

    #[test]
    fn truncation_zeroes_the_tail() {
        let d = one_jump(0.5, 1.0, 1.0);
        let e = g_exp(&d, -1.0).unwrap();
        assert_eq!(e.truncation(), Some(0.5));
        assert_eq!(e.value(0.5).unwrap(), c(1.0));
        assert_eq!(e.value(0.7).unwrap(), c(0.0));
        assert_eq!(e.value_right(0.5).unwrap(), c(0.0));
        assert!(matches!(e.inverse(0.7), Err(Error::Truncation { .. })));
        let sol = solve_first_order(&d, -1.0, Integrand::constant(c(1.0)), c(1.0)).unwrap();
        assert!(matches!(sol.value(0.9), Err(Error::Truncation { t0, .. }) if t0 == 0.5));
    }

    #[test]
    fn power_coefficient_by_hand() {
        let d = one_jump(0.5, 2.0, 1.0);
        let b: Coefficient = 1.0.into();
        let p2 = b.power_coefficient(2);
        assert_eq!(p2.at(&d, 0.5), c(4.0));
        let e = g_exp(&d, p2).unwrap();
        assert_eq!(e.value(1.0).unwrap(), c(9.0));
    }

    #[test]
    fn modulus_law_one_jump() {
        let d = one_jump(0.5, 1.0, 1.0);
        let sc = g_sin_cos(&d, 1.0).unwrap();
        let (s, co) = (sc.sin(1.0).unwrap(), sc.cos(1.0).unwrap());
        assert!((s * s + co * co - 2.0).norm() < 1e-15);
        assert_eq!(sc.sin(0.0).unwrap(), c(0.0));
        assert_eq!(sc.cos(0.0).unwrap(), c(1.0));
    }

    #[test]
    fn variable_coefficient_uses_quadrature() {
        let d = Derivator::identity(1.0).unwrap();
        let beta = Coefficient::function(|t| c(2.0 * t));
        let e = g_exp(&d, beta).unwrap();
        for &t in &[0.1, 0.45, 1.0] {
            assert!((e.value(t).unwrap() - c((t * t).exp())).norm() < 1e-13);
        }
    }

    #[test]
    fn green_first_order_classical() {
        let d = Derivator::identity(1.0).unwrap();
        let g = green_first_order(&d, -0.7).unwrap();
        assert_eq!(g.kernel(0.3, 0.5).unwrap(), c(0.0));
        assert!((g.kernel(0.8, 0.3).unwrap() - c((-0.7f64 * 0.5).exp())).norm() < 1e-15);
    }

    #[test]
    fn green_gains_one_factor() {
        let cont = ContinuousPart::identity(2.0).unwrap();
        let d = Derivator::new(cont, JumpSet::new([(1.0, 0.5)]).unwrap()).unwrap();
        let g = green_first_order(&d, 0.4).unwrap();
        let across = g.kernel(1.5, 0.5).unwrap();
        let plain = (0.4f64 * 1.0).exp();
        assert!((across - c(plain * 1.2)).norm() < 1e-14);
    }

    #[test]
    fn nonhomogeneous_identity() {
        let d = Derivator::identity(1.0).unwrap();
        let sol = solve_first_order(&d, 0.0, Integrand::constant(c(1.0)), c(0.25)).unwrap();
        assert!((sol.value(0.6).unwrap() - c(0.85)).norm() < 1e-14);
    }
}
