//! Numerical g-derivative on every point class, and residual checks of
//! closed-form solutions.
//!
//! Difference quotients are taken in the coordinate `x = g^C(t)`: the
//! sampling times are `γ(x ± k)`, so a function of the form `F∘g` is sampled
//! symmetrically in `F`'s argument and the quotient error has an expansion in
//! powers of `k` suitable for Richardson extrapolation. Steps shrink when a
//! jump or flat boundary is closer than the largest step.

use num_complex::Complex64;

use crate::derivator::{Derivator, PointClass};
use crate::error::{Error, Result};
use crate::right_offset;
use crate::stieltjes_integral::GFunction;

/// Step sequence and extrapolation flag.
///
/// `steps` are increments of `g^C` (equal to time steps when `g^C` is the
/// identity), strictly decreasing. One-sided quotients extend the sequence by
/// `extra_one_sided` further halvings because their error expansion also has
/// odd powers.
#[derive(Debug, Clone, PartialEq)]
pub struct GDiffSettings {
    pub steps: Vec<f64>,
    pub richardson: bool,
    pub extra_one_sided: usize,
}

impl GDiffSettings {
    /// Steps `(1e-3, 5e-4, 2.5e-4)·g^C(T)`, with extrapolation.
    pub fn for_derivator(d: &Derivator) -> Self {
        let scale = d.g_cont(d.horizon());
        let scale = if scale > 0.0 { scale } else { d.horizon() };
        GDiffSettings {
            steps: vec![1e-3 * scale, 5e-4 * scale, 2.5e-4 * scale],
            richardson: true,
            extra_one_sided: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = !self.steps.is_empty()
            && self.steps.iter().all(|&h| h > 0.0 && h.is_finite())
            && self.steps.windows(2).all(|w| w[1] < w[0]);
        if ok {
            Ok(())
        } else {
            Err(Error::domain(
                "g_derivative",
                "steps must be positive, finite and strictly decreasing",
            ))
        }
    }

    fn one_sided_steps(&self) -> Vec<f64> {
        let mut s = self.steps.clone();
        let last = *s.last().expect("validated");
        let ratio = if s.len() > 1 { s[s.len() - 1] / s[s.len() - 2] } else { 0.5 };
        let mut h = last;
        for _ in 0..self.extra_one_sided {
            h *= ratio;
            s.push(h);
        }
        s
    }
}

/// Neville extrapolation to zero of samples `(u_i, D_i)`.
fn extrapolate(us: &[f64], ds: &[Complex64]) -> Complex64 {
    let mut p: Vec<Complex64> = ds.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in (m..n).rev() {
            let (ui, uim) = (us[i], us[i - m]);
            p[i] = (p[i] * uim - p[i - 1] * ui) / (uim - ui);
        }
    }
    p[n - 1]
}

fn right_value(d: &Derivator, f: &dyn GFunction, t: f64) -> Complex64 {
    f.right_limit(t).unwrap_or_else(|| f.eval(t + right_offset(d.horizon())))
}

/// Distance in `x` to the nearest barrier (jump or flat endpoint image) strictly
/// after and strictly before `x`, clipped to the window.
fn room(d: &Derivator, x: f64) -> (f64, f64) {
    let imgs = d.breakpoint_images();
    let top = d.g_cont(d.horizon());
    let i = imgs.partition_point(|&y| y <= x);
    let fwd = imgs.get(i).copied().unwrap_or(top) - x;
    let j = imgs.partition_point(|&y| y < x);
    let bwd = if j == 0 { x } else { x - imgs[j - 1] };
    (fwd.max(0.0), bwd.max(0.0))
}

#[derive(Clone, Copy)]
enum Side {
    Forward,
    Backward,
}

fn scaled_steps(base: &[f64], avail: f64) -> Vec<f64> {
    let k0 = base[0];
    let s = if avail >= 2.0 * k0 { 1.0 } else { 0.5 * avail / k0 };
    base.iter().map(|&k| k * s).collect()
}

/// One-sided limit of `(f(s) − f_anchor) / (g(s) − g_anchor)` as `s → t` from
/// the given side, where `(f_anchor, g_anchor)` are the anchor values at `t`
/// (post-jump values for forward limits at jumps).
fn one_sided(
    d: &Derivator,
    f: &dyn GFunction,
    t: f64,
    f_anchor: Complex64,
    g_anchor: f64,
    side: Side,
    s: &GDiffSettings,
) -> Result<Complex64> {
    let x = d.g_cont(t);
    let (fwd, bwd) = room(d, x);
    let avail = match side {
        Side::Forward => fwd,
        Side::Backward => bwd,
    };
    if avail <= 0.0 {
        return Err(Error::DegeneratePoint { t });
    }
    let steps = scaled_steps(&s.one_sided_steps(), avail);
    let cont = d.continuous();
    let mut us = Vec::with_capacity(steps.len());
    let mut ds = Vec::with_capacity(steps.len());
    for &k in &steps {
        let ts = match side {
            Side::Forward => cont.pseudo_inverse_unchecked(x + k),
            Side::Backward => cont.pseudo_inverse_unchecked(x - k),
        };
        let dg = d.g(ts) - g_anchor;
        if dg.abs() < 1e-300 {
            return Err(Error::DegeneratePoint { t });
        }
        us.push(k);
        ds.push((f.eval(ts) - f_anchor) / dg);
    }
    Ok(if s.richardson { extrapolate(&us, &ds) } else { ds[ds.len() - 1] })
}

fn symmetric(d: &Derivator, f: &dyn GFunction, t: f64, s: &GDiffSettings) -> Result<Complex64> {
    let x = d.g_cont(t);
    let (fwd, bwd) = room(d, x);
    let sym = fwd.min(bwd);
    let k0 = s.steps[0];
    if sym < 0.05 * k0 {
        let g_t = d.g(t);
        let f_t = f.eval(t);
        return if fwd >= bwd {
            one_sided(d, f, t, f_t, g_t, Side::Forward, s)
        } else {
            one_sided(d, f, t, f_t, g_t, Side::Backward, s)
        };
    }
    let steps = scaled_steps(&s.steps, sym);
    let cont = d.continuous();
    let mut us = Vec::with_capacity(steps.len());
    let mut ds = Vec::with_capacity(steps.len());
    for &k in &steps {
        let tp = cont.pseudo_inverse_unchecked(x + k);
        let tm = cont.pseudo_inverse_unchecked(x - k);
        let dg = d.g(tp) - d.g(tm);
        if dg.abs() < 1e-300 {
            return Err(Error::DegeneratePoint { t });
        }
        us.push(k * k);
        ds.push((f.eval(tp) - f.eval(tm)) / dg);
    }
    Ok(if s.richardson { extrapolate(&us, &ds) } else { ds[ds.len() - 1] })
}

/// `f'_g(t)`, dispatched on the point class of `t`:
/// an exact quotient at jumps, transport to the right endpoint inside flat
/// components, one-sided limits at flat endpoints and an extrapolated
/// symmetric quotient elsewhere.
pub fn g_derivative_at(d: &Derivator, f: &dyn GFunction, t: f64, s: &GDiffSettings) -> Result<Complex64> {
    s.validate()?;
    match d.classify(t)? {
        PointClass::Jump => {
            let dl = d.jump_at(t);
            Ok((right_value(d, f, t) - f.eval(t)) / dl)
        }
        PointClass::FlatInterior => {
            let comp = d.flat_containing(t).expect("classified as flat");
            if comp.b >= d.horizon() {
                return Err(Error::DegeneratePoint { t });
            }
            g_derivative_at(d, f, comp.b, s)
        }
        PointClass::FlatRightEnd => one_sided(d, f, t, f.eval(t), d.g(t), Side::Forward, s),
        PointClass::FlatLeftEnd => one_sided(d, f, t, f.eval(t), d.g(t), Side::Backward, s),
        PointClass::Regular => symmetric(d, f, t, s),
    }
}

/// `lim_{s→t⁺} f'_g(s)`, needed for second derivatives at jumps.
pub fn g_derivative_right_limit(d: &Derivator, f: &dyn GFunction, t: f64, s: &GDiffSettings) -> Result<Complex64> {
    s.validate()?;
    if let Some(comp) = d.flat_components().iter().find(|c| c.a == t) {
        if comp.b >= d.horizon() {
            return Err(Error::DegeneratePoint { t });
        }
        return g_derivative_at(d, f, comp.b, s);
    }
    let f_anchor = if d.jump_at(t) > 0.0 { right_value(d, f, t) } else { f.eval(t) };
    one_sided(d, f, t, f_anchor, d.g_right(t), Side::Forward, s)
}

/// The numerical g-derivative of `f` as a function, with the numerical right
/// limit as its `right_limit`.
pub struct NumericDerivative<'a> {
    pub d: &'a Derivator,
    pub f: &'a dyn GFunction,
    pub settings: GDiffSettings,
}

impl GFunction for NumericDerivative<'_> {
    fn eval(&self, t: f64) -> Complex64 {
        g_derivative_at(self.d, self.f, t, &self.settings).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        g_derivative_right_limit(self.d, self.f, t, &self.settings).ok()
    }
}

/// Maximum absolute equation residuals, split by point type.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Residual {
    /// Over grid points that are not jumps (extrapolated quotients).
    pub off_jumps: f64,
    /// Over grid points that are jumps (exact quotients).
    pub at_jumps: f64,
}

impl Residual {
    pub fn max(&self) -> f64 {
        self.off_jumps.max(self.at_jumps)
    }

    fn record(&mut self, at_jump: bool, r: f64) {
        let slot = if at_jump { &mut self.at_jumps } else { &mut self.off_jumps };
        // NaN must not be swallowed by max
        if r.is_nan() || r > *slot {
            *slot = r;
        }
    }
}

/// Residual of `v'_g = β v + f` on the grid, with `β` evaluated as
/// `beta(t, Δ⁺g(t))`.
pub fn residual_first_order(
    d: &Derivator,
    v: &dyn GFunction,
    beta: &dyn Fn(f64, f64) -> Complex64,
    rhs: &dyn GFunction,
    grid: &[f64],
    s: &GDiffSettings,
) -> Result<Residual> {
    let mut out = Residual::default();
    for &t in grid {
        let dv = g_derivative_at(d, v, t, s)?;
        let r = (dv - beta(t, d.jump_at(t)) * v.eval(t) - rhs.eval(t)).norm();
        out.record(d.jump_at(t) > 0.0, r);
    }
    Ok(out)
}

/// Residual of `v''_g + P v'_g + Q v = f` on the grid.
///
/// Away from jumps both derivatives are numerical (the first derivative is
/// differentiated again). At jumps the first derivative is the exact quotient
/// `(v(t⁺) − v(t))/Δ⁺g(t)`; the second is the exact quotient of `dv`, a
/// closed-form g-derivative of `v`, and the residual also includes the
/// mismatch between the quotient and `dv(t)`. Without `dv` the numerical right
/// limit of the first derivative is used at jumps.
pub fn residual_second_order(
    d: &Derivator,
    v: &dyn GFunction,
    dv: Option<&dyn GFunction>,
    p: Complex64,
    q: Complex64,
    rhs: &dyn GFunction,
    grid: &[f64],
    s: &GDiffSettings,
) -> Result<Residual> {
    let mut out = Residual::default();
    let num = NumericDerivative {
        d,
        f: v,
        settings: s.clone(),
    };
    for &t in grid {
        let dl = d.jump_at(t);
        if dl > 0.0 {
            let v1 = (right_value(d, v, t) - v.eval(t)) / dl;
            let (w_t, w_r) = match dv {
                Some(w) => (w.eval(t), right_value(d, w, t)),
                None => (v1, g_derivative_right_limit(d, v, t, s)?),
            };
            let v2 = (w_r - w_t) / dl;
            let r = (v2 + p * v1 + q * v.eval(t) - rhs.eval(t)).norm();
            let consistency = (v1 - w_t).norm();
            out.record(true, r.max(consistency));
        } else {
            let v1 = g_derivative_at(d, v, t, s)?;
            let v2 = g_derivative_at(d, &num, t, s)?;
            let r = (v2 + p * v1 + q * v.eval(t) - rhs.eval(t)).norm();
            out.record(false, r);
        }
    }
    Ok(out)
}
