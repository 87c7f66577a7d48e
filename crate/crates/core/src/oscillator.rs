//! The Stieltjes harmonic oscillator `v''_g + 2ζω₀ v'_g + ω₀² v = 0` in its
//! three damping regimes, and the resonance problem
//! `v''_g + ω₀² v = cos_g(ω₀; 0, t)`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::derivator::Derivator;
use crate::error::{Error, Result};
use crate::first_order::{Coefficient, GExp, GSinCos};
use crate::second_order::{solve_nonhomogeneous, validated_exp, SecondOrderProblem, SecondOrderSolution};
use crate::stieltjes_integral::{GFunction, Integrand};

/// Tolerance on `|ζ − 1|` under which the oscillator counts as critically damped.
pub const CRITICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct OscillatorSpec {
    pub omega0: f64,
    pub zeta: f64,
    pub x0: f64,
    pub v0: f64,
    pub derivator: Derivator,
}

impl OscillatorSpec {
    pub fn new(derivator: Derivator, omega0: f64, zeta: f64, x0: f64, v0: f64) -> Self {
        OscillatorSpec {
            omega0,
            zeta,
            x0,
            v0,
            derivator,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = [self.omega0, self.zeta, self.x0, self.v0].iter().all(|v| v.is_finite());
        if !(finite && self.omega0 > 0.0 && self.zeta >= 0.0) {
            return Err(Error::domain(
                "oscillator",
                format!(
                    "need omega0 > 0, zeta >= 0 and finite data; got omega0 = {}, zeta = {}",
                    self.omega0, self.zeta
                ),
            ));
        }
        Ok(())
    }

    /// `P = 2ζω₀`, `Q = ω₀²` as a second-order problem.
    pub fn as_problem(&self) -> SecondOrderProblem {
        SecondOrderProblem::homogeneous(
            Complex64::new(2.0 * self.zeta * self.omega0, 0.0),
            Complex64::new(self.omega0 * self.omega0, 0.0),
            Complex64::new(self.x0, 0.0),
            Complex64::new(self.v0, 0.0),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Overdamped,
    CriticallyDamped,
    Underdamped,
}

impl Regime {
    pub fn of(zeta: f64) -> Regime {
        if (zeta - 1.0).abs() <= CRITICAL_TOL {
            Regime::CriticallyDamped
        } else if zeta > 1.0 {
            Regime::Overdamped
        } else {
            Regime::Underdamped
        }
    }
}

#[derive(Debug, Clone)]
enum Form {
    /// Two real roots `λ₁ = −ζω₀ − ω₀√(ζ²−1)`, `λ₂ = −ζω₀ + ω₀√(ζ²−1)`.
    Over { l1: f64, l2: f64, e1: GExp, e2: GExp },
    Critical { l: f64, e: GExp },
    /// `exp_g(a)[((v₀ − a x₀)/b) sin_g(b/(1+aΔ)) + x₀ cos_g(b/(1+aΔ))]`.
    Under { a: f64, b: f64, ea: GExp, sc: GSinCos },
    /// Complex-exponential form, used when `1 + aΔ⁺g` vanishes at a jump and
    /// the modulated argument `b/(1+aΔ)` is undefined.
    UnderComplex { a: f64, b: f64, ep: GExp, em: GExp },
}

/// A real-valued closed-form oscillator trajectory.
#[derive(Debug, Clone)]
pub struct OscillatorSolution {
    spec: OscillatorSpec,
    form: Form,
    regime: Regime,
}

/// Imaginary residue allowed in real outputs, relative to `1 + |Re|`.
pub const IMAG_TOL: f64 = 1e-12;

fn real_part(z: Complex64) -> Result<f64> {
    if z.im.abs() <= IMAG_TOL * (1.0 + z.re.abs()) {
        Ok(z.re)
    } else {
        Err(Error::domain(
            "oscillator",
            format!("closed form produced a non-real value {z}"),
        ))
    }
}

impl OscillatorSolution {
    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn spec(&self) -> &OscillatorSpec {
        &self.spec
    }

    fn pair(&self, t: f64) -> Result<(Complex64, Complex64)> {
        let (x0, v0) = (self.spec.x0, self.spec.v0);
        let d = &self.spec.derivator;
        match &self.form {
            Form::Over { l1, l2, e1, e2 } => {
                let c1 = (v0 - l2 * x0) / (l1 - l2);
                let c2 = x0 - c1;
                Ok((
                    e1.value(t)? * c1 + e2.value(t)? * c2,
                    e1.value_right(t)? * c1 + e2.value_right(t)? * c2,
                ))
            }
            Form::Critical { l, e } => {
                let h = SecondOrderSolution::h1(d, Complex64::new(*l, 0.0), t);
                let dl = d.jump_at(t);
                let h_r = if dl > 0.0 { h + dl / (1.0 + l * dl) } else { h };
                let c = v0 - l * x0;
                Ok((e.value(t)? * (x0 + c * h), e.value_right(t)? * (x0 + c * h_r)))
            }
            Form::Under { a, b, ea, sc } => {
                let k = (v0 - a * x0) / b;
                Ok((
                    ea.value(t)? * (sc.sin(t)? * k + sc.cos(t)? * x0),
                    ea.value_right(t)? * (sc.sin_right(t)? * k + sc.cos_right(t)? * x0),
                ))
            }
            Form::UnderComplex { a, b, ep, em } => {
                let i = Complex64::new(0.0, 1.0);
                let cp = (v0 - a * x0 + i * b * x0) / (2.0 * b * i);
                let cm = (v0 - a * x0 - i * b * x0) / (2.0 * b * i);
                Ok((
                    cp * ep.value(t)? - cm * em.value(t)?,
                    cp * ep.value_right(t)? - cm * em.value_right(t)?,
                ))
            }
        }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        real_part(self.pair(t)?.0)
    }

    pub fn value_right(&self, t: f64) -> Result<f64> {
        real_part(self.pair(t)?.1)
    }

    /// The same trajectory from the generic second-order solver, which also
    /// provides the closed-form g-derivative.
    pub fn generic(&self) -> Result<SecondOrderSolution> {
        solve_nonhomogeneous(&self.spec.derivator, &self.spec.as_problem())
    }
}

impl GFunction for OscillatorSolution {
    fn eval(&self, t: f64) -> Complex64 {
        self.value(t).map_or(Complex64::new(f64::NAN, 0.0), |v| Complex64::new(v, 0.0))
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        self.value_right(t).ok().map(|v| Complex64::new(v, 0.0))
    }
}

/// The damped oscillator in closed form, dispatched on the damping ratio.
pub fn solve_oscillator(spec: &OscillatorSpec) -> Result<OscillatorSolution> {
    spec.validate()?;
    let d = Arc::new(spec.derivator.clone());
    let (w, z) = (spec.omega0, spec.zeta);
    let regime = Regime::of(z);
    let form = match regime {
        Regime::Overdamped => {
            let s = w * (z * z - 1.0).sqrt();
            let (l1, l2) = (-z * w - s, -z * w + s);
            Form::Over {
                l1,
                l2,
                e1: validated_exp(&d, Complex64::new(l1, 0.0), "oscillator")?,
                e2: validated_exp(&d, Complex64::new(l2, 0.0), "oscillator")?,
            }
        }
        Regime::CriticallyDamped => {
            let l = -w;
            Form::Critical {
                l,
                e: validated_exp(&d, Complex64::new(l, 0.0), "oscillator")?,
            }
        }
        Regime::Underdamped => {
            let a = -z * w;
            let b = w * (1.0 - z * z).sqrt();
            // complex roots a ± ib never zero a jump factor because b > 0
            let ea = GExp::shared(Arc::clone(&d), a)?;
            if ea.truncation().is_some() {
                Form::UnderComplex {
                    a,
                    b,
                    ep: GExp::shared(Arc::clone(&d), Complex64::new(a, b))?,
                    em: GExp::shared(Arc::clone(&d), Complex64::new(a, -b))?,
                }
            } else {
                let bc: Coefficient = b.into();
                let modulated = bc.modulated_by(&a.into());
                let sc = GSinCos::new(Arc::clone(&d), modulated)?;
                Form::Under { a, b, ea, sc }
            }
        }
    };
    Ok(OscillatorSolution {
        spec: spec.clone(),
        form,
        regime,
    })
}

/// Solution of the resonance problem `v''_g + ω₀² v = cos_g(ω₀;0,t)`:
/// `x₀cos_g + (v₀/ω₀)sin_g + sin_g·I₁/(2ω₀) − cos_g·I₂/2` with
/// `I₁ = ∫_{[0,t)} 1/(1+ω₀²Δ²) dμ_g` and `I₂ = ∫_{[0,t)} Δ/(1+ω₀²Δ²) dμ_g`.
#[derive(Debug, Clone)]
pub struct ResonanceSolution {
    spec: OscillatorSpec,
    sc: GSinCos,
}

impl ResonanceSolution {
    /// `cos_g(ω₀; 0, ·)`, the forcing term.
    pub fn forcing(&self) -> Integrand {
        self.sc.cos_fn()
    }

    pub fn sin_cos(&self) -> &GSinCos {
        &self.sc
    }

    /// `(I₁(t), I₂(t))`.
    pub fn amplitude_integrals(&self, t: f64) -> (f64, f64) {
        let d = &self.spec.derivator;
        let w2 = self.spec.omega0 * self.spec.omega0;
        let js = d.jump_set();
        let n = js.count_before(t);
        let (mut i1, mut i2) = (d.g_cont(t), 0.0);
        for j in &js.as_slice()[..n] {
            let den = 1.0 + w2 * j.delta * j.delta;
            i1 += j.delta / den;
            i2 += j.delta * j.delta / den;
        }
        (i1, i2)
    }

    fn combine(&self, s: Complex64, c: Complex64, i1: f64, i2: f64) -> Result<f64> {
        let (x0, v0, w) = (self.spec.x0, self.spec.v0, self.spec.omega0);
        real_part(c * x0 + s * (v0 / w) + s * (i1 / (2.0 * w)) - c * (0.5 * i2))
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        let (i1, i2) = self.amplitude_integrals(t);
        self.combine(self.sc.sin(t)?, self.sc.cos(t)?, i1, i2)
    }

    pub fn value_right(&self, t: f64) -> Result<f64> {
        let (mut i1, mut i2) = self.amplitude_integrals(t);
        let dl = self.spec.derivator.jump_at(t);
        if dl > 0.0 {
            let den = 1.0 + self.spec.omega0.powi(2) * dl * dl;
            i1 += dl / den;
            i2 += dl * dl / den;
        }
        self.combine(self.sc.sin_right(t)?, self.sc.cos_right(t)?, i1, i2)
    }

    /// The same trajectory from the generic second-order solver.
    pub fn generic(&self) -> Result<SecondOrderSolution> {
        let w = self.spec.omega0;
        let prob = SecondOrderProblem::homogeneous(
            Complex64::new(0.0, 0.0),
            Complex64::new(w * w, 0.0),
            Complex64::new(self.spec.x0, 0.0),
            Complex64::new(self.spec.v0, 0.0),
        )
        .with_source(self.forcing());
        solve_nonhomogeneous(&self.spec.derivator, &prob)
    }
}

impl GFunction for ResonanceSolution {
    fn eval(&self, t: f64) -> Complex64 {
        self.value(t).map_or(Complex64::new(f64::NAN, 0.0), |v| Complex64::new(v, 0.0))
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        self.value_right(t).ok().map(|v| Complex64::new(v, 0.0))
    }
}

/// The resonance solution; `spec.zeta` is ignored.
pub fn solve_resonance(spec: &OscillatorSpec) -> Result<ResonanceSolution> {
    let mut s = spec.clone();
    s.zeta = 0.0;
    s.validate()?;
    let d = Arc::new(s.derivator.clone());
    // 1 ± iω₀Δ never vanishes, so both roots are always valid
    let sc = GSinCos::new(d, s.omega0)?;
    Ok(ResonanceSolution { spec: s, sc })
}
