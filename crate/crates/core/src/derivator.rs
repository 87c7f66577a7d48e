//! Derivators on a working window `[0, T]`.
//!
//! A derivator is stored as `g = g^C + g^B`: a continuous non-decreasing part
//! with `g^C(0) = 0` plus a finite sorted list of positive jumps. Evaluation is
//! left-continuous, so `g(t_k)` excludes the jump at `t_k` and `g(t_k^+)`
//! includes it.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Relative tolerance used when the pseudo-inverse is found by bisection.
pub const TAU_GAMMA: f64 = 1e-13;

/// A closure-backed continuous part for shapes outside the built-in catalog.
///
/// The closure must be continuous, non-decreasing and vanish at 0. Flat
/// segments cannot be discovered from a closure, so they are declared, as are
/// the kinks (points where the closure is not smooth) used to split quadrature.
#[derive(Clone)]
pub struct CustomContinuous {
    pub func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub flats: Vec<(f64, f64)>,
    pub kinks: Vec<f64>,
}

impl fmt::Debug for CustomContinuous {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomContinuous")
            .field("flats", &self.flats)
            .field("kinks", &self.kinks)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum ContinuousKind {
    /// `g^C(t) = t`.
    Identity,
    /// Piecewise-linear with `(t_i, slope_i)` knots; slope `slope_i` applies on
    /// `[t_i, t_{i+1})`. The first knot sits at 0.
    PiecewiseLinear(Vec<(f64, f64)>),
    /// The staircase saw: slope 1 on `[2k, 2k+1]`, flat on `[2k+1, 2k+2]`.
    StaircaseSaw,
    Custom(CustomContinuous),
}

/// The continuous part `g^C` on `[0, domain_end]`.
#[derive(Debug, Clone)]
pub struct ContinuousPart {
    kind: ContinuousKind,
    domain_end: f64,
    // cumulative values at the piecewise-linear knots
    knot_values: Vec<f64>,
}

impl ContinuousPart {
    pub fn identity(domain_end: f64) -> Result<Self> {
        Self::new(ContinuousKind::Identity, domain_end)
    }

    pub fn staircase_saw(domain_end: f64) -> Result<Self> {
        Self::new(ContinuousKind::StaircaseSaw, domain_end)
    }

    pub fn piecewise_linear(knots: Vec<(f64, f64)>, domain_end: f64) -> Result<Self> {
        Self::new(ContinuousKind::PiecewiseLinear(knots), domain_end)
    }

    /// The zero continuous part, for pure-jump derivators.
    pub fn zero(domain_end: f64) -> Result<Self> {
        Self::piecewise_linear(vec![(0.0, 0.0)], domain_end)
    }

    pub fn custom(custom: CustomContinuous, domain_end: f64) -> Result<Self> {
        Self::new(ContinuousKind::Custom(custom), domain_end)
    }

    pub fn new(kind: ContinuousKind, domain_end: f64) -> Result<Self> {
        if !(domain_end.is_finite() && domain_end > 0.0) {
            return Err(Error::invalid(format!(
                "horizon must be finite and positive, got {domain_end}"
            )));
        }
        let mut knot_values = Vec::new();
        match &kind {
            ContinuousKind::Identity | ContinuousKind::StaircaseSaw => {}
            ContinuousKind::PiecewiseLinear(knots) => {
                if knots.is_empty() || knots[0].0 != 0.0 {
                    return Err(Error::invalid("first piecewise-linear knot must be at t = 0"));
                }
                for w in knots.windows(2) {
                    if !(w[1].0 > w[0].0) {
                        return Err(Error::invalid("piecewise-linear knots must be strictly increasing"));
                    }
                }
                if let Some(&(t, _)) = knots.iter().find(|k| !(k.0.is_finite() && k.0 < domain_end)) {
                    return Err(Error::invalid(format!("knot {t} lies outside [0, {domain_end})")));
                }
                if let Some(&(_, s)) = knots.iter().find(|k| !(k.1.is_finite() && k.1 >= 0.0)) {
                    return Err(Error::invalid(format!("slope {s} must be finite and non-negative")));
                }
                let mut acc = 0.0;
                knot_values.push(0.0);
                for w in knots.windows(2) {
                    acc += w[0].1 * (w[1].0 - w[0].0);
                    knot_values.push(acc);
                }
            }
            ContinuousKind::Custom(c) => {
                let g0 = (c.func)(0.0);
                if g0.abs() > 1e-14 {
                    return Err(Error::invalid(format!("custom continuous part must vanish at 0, got {g0}")));
                }
                for &(a, b) in &c.flats {
                    if !(0.0 <= a && a < b && b <= domain_end) {
                        return Err(Error::invalid(format!("declared flat [{a}, {b}] is not inside the window")));
                    }
                }
                for w in c.flats.windows(2) {
                    if !(w[1].0 > w[0].1) {
                        return Err(Error::invalid("declared flats must be sorted and separated"));
                    }
                }
            }
        }
        Ok(ContinuousPart {
            kind,
            domain_end,
            knot_values,
        })
    }

    pub fn kind(&self) -> &ContinuousKind {
        &self.kind
    }

    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    /// `g^C(t)` without window checks.
    pub fn value(&self, t: f64) -> f64 {
        match &self.kind {
            ContinuousKind::Identity => t,
            ContinuousKind::StaircaseSaw => saw(t),
            ContinuousKind::PiecewiseLinear(knots) => {
                let i = knots.partition_point(|k| k.0 <= t).saturating_sub(1);
                self.knot_values[i] + knots[i].1 * (t - knots[i].0)
            }
            ContinuousKind::Custom(c) => (c.func)(t),
        }
    }

    /// Closed flat segments `[a, b]` of `g^C` inside the window, merged and sorted.
    pub fn flats(&self) -> Vec<(f64, f64)> {
        let t_end = self.domain_end;
        match &self.kind {
            ContinuousKind::Identity => Vec::new(),
            ContinuousKind::StaircaseSaw => {
                let mut out = Vec::new();
                let mut a = 1.0;
                while a < t_end {
                    out.push((a, (a + 1.0).min(t_end)));
                    a += 2.0;
                }
                out
            }
            ContinuousKind::PiecewiseLinear(knots) => {
                let mut out: Vec<(f64, f64)> = Vec::new();
                for (i, &(t, s)) in knots.iter().enumerate() {
                    if s != 0.0 {
                        continue;
                    }
                    let end = knots.get(i + 1).map_or(t_end, |k| k.0);
                    match out.last_mut() {
                        Some(last) if last.1 == t => last.1 = end,
                        _ => out.push((t, end)),
                    }
                }
                out
            }
            ContinuousKind::Custom(c) => c.flats.clone(),
        }
    }

    /// Points in `(0, T)` where `g^C` is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        let t_end = self.domain_end;
        match &self.kind {
            ContinuousKind::Identity => Vec::new(),
            ContinuousKind::StaircaseSaw => {
                let mut out = Vec::new();
                let mut k = 1.0;
                while k < t_end {
                    out.push(k);
                    k += 1.0;
                }
                out
            }
            ContinuousKind::PiecewiseLinear(knots) => knots.iter().skip(1).map(|k| k.0).collect(),
            ContinuousKind::Custom(c) => {
                let mut out: Vec<f64> = c.kinks.iter().copied().filter(|&k| k > 0.0 && k < t_end).collect();
                for &(a, b) in &c.flats {
                    out.push(a);
                    out.push(b);
                }
                out.retain(|&k| k > 0.0 && k < t_end);
                out.sort_by(f64::total_cmp);
                out.dedup();
                out
            }
        }
    }

    /// Minimal `t` with `g^C(t) = x`. `x` must lie in `[0, g^C(T)]`.
    pub fn pseudo_inverse(&self, x: f64) -> Result<f64> {
        let top = self.value(self.domain_end);
        if !(x >= 0.0 && x <= top) {
            return Err(Error::domain(
                "derivator",
                format!("pseudo-inverse argument {x} outside [0, {top}]"),
            ));
        }
        Ok(self.pseudo_inverse_unchecked(x))
    }

    pub(crate) fn pseudo_inverse_unchecked(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            ContinuousKind::Identity => x,
            ContinuousKind::StaircaseSaw => {
                let fl = x.floor();
                if x == fl {
                    2.0 * fl - 1.0
                } else {
                    x + fl
                }
            }
            ContinuousKind::PiecewiseLinear(knots) => {
                // first knot whose cumulative value reaches x
                let j = self.knot_values.partition_point(|&c| c < x);
                if j < knots.len() && self.knot_values[j] == x {
                    return knots[j].0;
                }
                let i = j - 1;
                knots[i].0 + (x - self.knot_values[i]) / knots[i].1
            }
            ContinuousKind::Custom(c) => {
                let (mut lo, mut hi) = (0.0_f64, self.domain_end);
                let tol = TAU_GAMMA * self.domain_end.max(1.0);
                while hi - lo > tol {
                    let mid = 0.5 * (lo + hi);
                    if (c.func)(mid) < x {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                hi
            }
        }
    }
}

fn saw(t: f64) -> f64 {
    let n = t.floor();
    if (n as i64).rem_euclid(2) == 0 {
        t - 0.5 * n
    } else {
        0.5 + 0.5 * n
    }
}

/// One jump of the derivator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub t: f64,
    pub delta: f64,
}

/// A sorted finite set of jumps.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct JumpSet {
    jumps: Vec<Jump>,
    prefix: Vec<f64>,
}

impl JumpSet {
    pub fn empty() -> Self {
        JumpSet {
            jumps: Vec::new(),
            prefix: vec![0.0],
        }
    }

    /// Builds a jump set from `(t, delta)` pairs. Times must be strictly
    /// increasing and magnitudes strictly positive.
    pub fn new(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let jumps: Vec<Jump> = pairs.into_iter().map(|(t, delta)| Jump { t, delta }).collect();
        for j in &jumps {
            if !(j.t.is_finite() && j.delta.is_finite() && j.delta > 0.0) {
                return Err(Error::invalid(format!(
                    "jump ({}, {}) needs a finite time and a positive magnitude",
                    j.t, j.delta
                )));
            }
        }
        for w in jumps.windows(2) {
            if !(w[1].t > w[0].t) {
                return Err(Error::invalid("jump times must be strictly increasing"));
            }
        }
        let mut prefix = Vec::with_capacity(jumps.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for j in &jumps {
            acc += j.delta;
            prefix.push(acc);
        }
        Ok(JumpSet { jumps, prefix })
    }

    pub fn as_slice(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    /// Number of jumps with `t_k < t`.
    pub fn count_before(&self, t: f64) -> usize {
        self.jumps.partition_point(|j| j.t < t)
    }

    /// `Σ_{t_k < t} Δ⁺g(t_k)`.
    pub fn sum_before(&self, t: f64) -> f64 {
        self.prefix[self.count_before(t)]
    }

    /// Magnitude of the jump at exactly `t`, or 0.
    pub fn at(&self, t: f64) -> f64 {
        match self.jumps.binary_search_by(|j| j.t.total_cmp(&t)) {
            Ok(i) => self.jumps[i].delta,
            Err(_) => 0.0,
        }
    }
}

/// The class of a point with respect to `D_g`, `C_g` and `N_g^±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Regular,
    Jump,
    FlatInterior,
    /// Left endpoint of a flat component that is not a jump (`N_g^-`).
    FlatLeftEnd,
    /// Right endpoint of a flat component that is not a jump (`N_g^+`).
    FlatRightEnd,
}

/// A maximal open interval `(a, b)` on which `g` is constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatComponent {
    pub a: f64,
    pub b: f64,
    pub a_is_jump: bool,
    pub b_is_jump: bool,
}

/// A derivator `g = g^C + g^B` on `[0, T]`.
#[derive(Debug, Clone)]
pub struct Derivator {
    cont: ContinuousPart,
    jumps: JumpSet,
    horizon: f64,
    flats: Vec<FlatComponent>,
    breakpoints: Vec<f64>,
    breakpoint_images: Vec<f64>,
}

impl Derivator {
    /// Builds a derivator and checks the endpoint conditions: no jump at 0 or
    /// `T`, 0 not a left end of a flat component and `T` not in the closure
    /// of one.
    pub fn new(cont: ContinuousPart, jumps: JumpSet) -> Result<Self> {
        Self::build(cont, jumps, true)
    }

    /// Like [`Derivator::new`] but accepts flat segments touching 0 or `T`.
    /// Pure-jump derivators need this. The g-derivative is then undefined at
    /// the affected endpoints.
    pub fn new_relaxed(cont: ContinuousPart, jumps: JumpSet) -> Result<Self> {
        Self::build(cont, jumps, false)
    }

    /// `g(t) = t` on `[0, T]`.
    pub fn identity(horizon: f64) -> Result<Self> {
        Self::new(ContinuousPart::identity(horizon)?, JumpSet::empty())
    }

    /// `g^C ≡ 0` with the given jumps.
    pub fn pure_jump(horizon: f64, jumps: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        Self::new_relaxed(ContinuousPart::zero(horizon)?, JumpSet::new(jumps)?)
    }

    fn build(cont: ContinuousPart, jumps: JumpSet, strict: bool) -> Result<Self> {
        let horizon = cont.domain_end();
        if let (Some(first), Some(last)) = (jumps.as_slice().first(), jumps.as_slice().last()) {
            if !(first.t > 0.0 && last.t < horizon) {
                return Err(Error::invalid(format!(
                    "jump times must lie in (0, {horizon}); got range [{}, {}]",
                    first.t, last.t
                )));
            }
        }
        let cflats = cont.flats();
        if strict {
            if let Some(&(a, b)) = cflats.iter().find(|f| f.0 <= 0.0 || f.1 >= horizon) {
                return Err(Error::invalid(format!(
                    "flat segment [{a}, {b}] touches the window boundary; use new_relaxed if intended"
                )));
            }
        }
        let mut flats = Vec::new();
        for &(a, b) in &cflats {
            let mut left = a;
            let mut left_jump = jumps.at(a) > 0.0;
            for j in jumps.as_slice().iter().filter(|j| j.t > a && j.t < b) {
                flats.push(FlatComponent {
                    a: left,
                    b: j.t,
                    a_is_jump: left_jump,
                    b_is_jump: true,
                });
                left = j.t;
                left_jump = true;
            }
            flats.push(FlatComponent {
                a: left,
                b,
                a_is_jump: left_jump,
                b_is_jump: jumps.at(b) > 0.0,
            });
        }
        let mut breakpoints = cont.kinks();
        breakpoints.extend(cflats.iter().flat_map(|f| [f.0, f.1]));
        breakpoints.extend(jumps.as_slice().iter().map(|j| j.t));
        breakpoints.retain(|&t| t > 0.0 && t < horizon);
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        let mut breakpoint_images: Vec<f64> = breakpoints.iter().map(|&t| cont.value(t)).collect();
        breakpoint_images.dedup();
        Ok(Derivator {
            cont,
            jumps,
            horizon,
            flats,
            breakpoints,
            breakpoint_images,
        })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn continuous(&self) -> &ContinuousPart {
        &self.cont
    }

    pub fn jump_set(&self) -> &JumpSet {
        &self.jumps
    }

    pub fn jumps(&self) -> &[Jump] {
        self.jumps.as_slice()
    }

    /// Maximal open flat components of `g` (flat segments of `g^C` split at
    /// interior jumps).
    pub fn flat_components(&self) -> &[FlatComponent] {
        &self.flats
    }

    /// Sorted points in `(0, T)` where `g` or `g^C` is not smooth: kinks,
    /// flat endpoints and jump times.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// `g^C` images of [`Derivator::breakpoints`], sorted and deduplicated.
    pub fn breakpoint_images(&self) -> &[f64] {
        &self.breakpoint_images
    }

    fn check_window(&self, t: f64) -> Result<()> {
        if t >= 0.0 && t <= self.horizon {
            Ok(())
        } else {
            Err(Error::domain(
                "derivator",
                format!("time {t} outside the window [0, {}]", self.horizon),
            ))
        }
    }

    /// `g(t)`, left-continuous.
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.check_window(t)?;
        Ok(self.g(t))
    }

    /// `g(t^+)`, defined for `t < T`.
    pub fn eval_right(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t < self.horizon) {
            return Err(Error::domain(
                "derivator",
                format!("right limit at {t} needs 0 <= t < {}", self.horizon),
            ));
        }
        Ok(self.g_right(t))
    }

    /// `g(t)` without window checks.
    pub fn g(&self, t: f64) -> f64 {
        self.cont.value(t) + self.jumps.sum_before(t)
    }

    /// `g(t^+)` without window checks.
    pub fn g_right(&self, t: f64) -> f64 {
        self.g(t) + self.jumps.at(t)
    }

    /// `g^C(t)`.
    pub fn g_cont(&self, t: f64) -> f64 {
        self.cont.value(t)
    }

    /// `Δ⁺g(t)`; zero away from jumps.
    pub fn jump_at(&self, t: f64) -> f64 {
        self.jumps.at(t)
    }

    pub fn classify(&self, t: f64) -> Result<PointClass> {
        self.check_window(t)?;
        if self.jumps.at(t) > 0.0 {
            return Ok(PointClass::Jump);
        }
        Ok(match self.flat_containing(t) {
            Some(f) if t > f.a && t < f.b => PointClass::FlatInterior,
            Some(f) if t == f.a && !f.a_is_jump => PointClass::FlatLeftEnd,
            Some(f) if t == f.b && !f.b_is_jump => PointClass::FlatRightEnd,
            _ => PointClass::Regular,
        })
    }

    /// The flat component whose closure contains `t`, preferring the one with
    /// `t` in its interior.
    pub fn flat_containing(&self, t: f64) -> Option<FlatComponent> {
        let i = self.flats.partition_point(|f| f.b < t);
        let cand = self.flats.get(i).copied()?;
        if t < cand.a {
            return None;
        }
        if t == cand.b {
            if let Some(next) = self.flats.get(i + 1) {
                if next.a == t {
                    return Some(*next);
                }
            }
        }
        Some(cand)
    }

    pub fn pseudo_inverse(&self, x: f64) -> Result<f64> {
        self.cont.pseudo_inverse(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gremark() -> Derivator {
        let c = ContinuousPart::piecewise_linear(vec![(0.0, 1.0), (1.0, 0.0), (2.0, 1.0)], 3.0).unwrap();
        Derivator::new(c, JumpSet::empty()).unwrap()
    }

    #[test]
    fn identity_eval() {
        let d = Derivator::identity(1.0).unwrap();
        assert_eq!(d.eval(0.7).unwrap(), 0.7);
        assert_eq!(d.eval_right(0.3).unwrap(), 0.3);
        assert_eq!(d.classify(0.4).unwrap(), PointClass::Regular);
        assert_eq!(d.pseudo_inverse(0.4).unwrap(), 0.4);
        assert!(d.eval(1.2).is_err());
        assert!(d.eval_right(1.0).is_err());
    }

    #[test]
    fn gremark_flat() {
        let d = gremark();
        assert_eq!(d.eval(1.5).unwrap(), 1.0);
        assert_eq!(d.eval_right(1.0).unwrap(), 1.0);
        assert_eq!(d.classify(1.5).unwrap(), PointClass::FlatInterior);
        assert_eq!(d.classify(1.0).unwrap(), PointClass::FlatLeftEnd);
        assert_eq!(d.classify(2.0).unwrap(), PointClass::FlatRightEnd);
        assert_eq!(d.classify(2.5).unwrap(), PointClass::Regular);
        assert_eq!(d.pseudo_inverse(1.0).unwrap(), 1.0);
        assert!((d.pseudo_inverse(1.5).unwrap() - 2.5).abs() < 1e-15);
        assert!(d.pseudo_inverse(2.5).is_err());
    }

    #[test]
    fn saw_values_and_inverse() {
        let c = ContinuousPart::staircase_saw(8.5).unwrap();
        assert_eq!(c.value(0.5), 0.5);
        assert_eq!(c.value(1.5), 1.0);
        assert_eq!(c.value(2.5), 1.5);
        assert_eq!(c.value(3.7), 2.0);
        assert_eq!(c.pseudo_inverse(0.5).unwrap(), 0.5);
        assert_eq!(c.pseudo_inverse(1.0).unwrap(), 1.0);
        assert_eq!(c.pseudo_inverse(2.0).unwrap(), 3.0);
        assert_eq!(c.pseudo_inverse(1.25).unwrap(), 2.25);
        assert_eq!(c.flats(), vec![(1.0, 2.0), (3.0, 4.0), (5.0, 6.0), (7.0, 8.0)]);
    }

    #[test]
    fn saw_inverse_against_scan() {
        // brute-force scan of the saw on a fine grid for the first time it reaches x
        let c = ContinuousPart::staircase_saw(6.5).unwrap();
        for &x in &[0.5, 1.0, 1.3, 2.0, 2.9] {
            let n = 650_000;
            let t_scan = (0..=n)
                .map(|i| 6.5 * i as f64 / n as f64)
                .find(|&t| c.value(t) >= x - 1e-12)
                .unwrap();
            assert!((c.pseudo_inverse(x).unwrap() - t_scan).abs() < 2e-5, "x = {x}");
        }
    }

    #[test]
    fn jump_left_continuity() {
        let t1 = std::f64::consts::FRAC_PI_4;
        let c = ContinuousPart::staircase_saw(8.5).unwrap();
        let d = Derivator::new(c, JumpSet::new([(t1, 1.0 / 3.0)]).unwrap()).unwrap();
        assert_eq!(d.eval(t1).unwrap(), t1);
        assert_eq!(d.eval_right(t1).unwrap(), t1 + 1.0 / 3.0);
        assert_eq!(d.classify(t1).unwrap(), PointClass::Jump);
        let above = t1 + 1e-9;
        assert!((d.eval(above).unwrap() - (above + 1.0 / 3.0)).abs() < 1e-15);
        let below = d.eval(t1 - 1e-13).unwrap();
        assert!((below - d.eval(t1).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn jump_inside_flat_splits_component() {
        let c = ContinuousPart::staircase_saw(2.5).unwrap();
        let d = Derivator::new(c, JumpSet::new([(1.5, 0.2)]).unwrap()).unwrap();
        let comps = d.flat_components();
        assert_eq!(comps.len(), 2);
        assert_eq!((comps[0].a, comps[0].b, comps[0].b_is_jump), (1.0, 1.5, true));
        assert_eq!((comps[1].a, comps[1].b, comps[1].a_is_jump), (1.5, 2.0, true));
        assert_eq!(d.classify(1.2).unwrap(), PointClass::FlatInterior);
        assert_eq!(d.classify(1.5).unwrap(), PointClass::Jump);
        assert_eq!(d.classify(1.7).unwrap(), PointClass::FlatInterior);
        assert_eq!(d.classify(1.0).unwrap(), PointClass::FlatLeftEnd);
        assert_eq!(d.classify(2.0).unwrap(), PointClass::FlatRightEnd);
    }

    #[test]
    fn endpoint_rules() {
        let c = ContinuousPart::staircase_saw(8.0).unwrap();
        assert!(Derivator::new(c.clone(), JumpSet::empty()).is_err());
        assert!(Derivator::new_relaxed(c, JumpSet::empty()).is_ok());
        let id = ContinuousPart::identity(1.0).unwrap();
        assert!(Derivator::new(id.clone(), JumpSet::new([(0.0, 1.0)]).unwrap()).is_err());
        assert!(Derivator::new(id, JumpSet::new([(1.0, 1.0)]).unwrap()).is_err());
        let flat0 = ContinuousPart::piecewise_linear(vec![(0.0, 0.0), (0.5, 1.0)], 1.0).unwrap();
        assert!(Derivator::new(flat0, JumpSet::empty()).is_err());
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(JumpSet::new([(0.5, 0.0)]).is_err());
        assert!(JumpSet::new([(0.5, 1.0), (0.5, 1.0)]).is_err());
        assert!(ContinuousPart::piecewise_linear(vec![(0.0, -1.0)], 1.0).is_err());
        assert!(ContinuousPart::piecewise_linear(vec![(0.1, 1.0)], 1.0).is_err());
        assert!(ContinuousPart::identity(0.0).is_err());
    }

    #[test]
    fn custom_bisection_inverse() {
        let cc = CustomContinuous {
            func: Arc::new(|t: f64| t * t),
            flats: vec![],
            kinks: vec![],
        };
        let c = ContinuousPart::custom(cc, 2.0).unwrap();
        let x = 2.0;
        let t = c.pseudo_inverse(x).unwrap();
        assert!((t - 2f64.sqrt()).abs() < 1e-12);
        assert!((c.value(t) - x).abs() < 1e-12);
    }
}
