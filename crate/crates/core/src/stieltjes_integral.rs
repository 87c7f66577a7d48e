//! Lebesgue–Stieltjes integrals `∫_{[t1,t2)} f dμ_g`.
//!
//! The integral splits into a continuous-part integral and a jump sum. The
//! continuous part is computed on the transformed axis `x = g^C(t)`, where it
//! becomes the Lebesgue integral of `f∘γ` over `[g^C(t1), g^C(t2))`. The jump
//! sum is exact.
//!
//! Quadrature is adaptive Gauss–Kronrod (7/15 points) with a global
//! error-ordered work queue. The transformed axis is pre-split at the images of
//! every breakpoint of `g` so that each panel sees a smooth integrand.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::derivator::Derivator;
use crate::error::{Error, Result};

/// A complex-valued function of time that the solvers can integrate and
/// differentiate.
///
/// `right_limit` returns `f(t^+)` when it is known exactly (closed-form
/// solutions know their post-jump values). When it returns `None`, the
/// g-derivative falls back to evaluating slightly to the right of `t`.
pub trait GFunction: Send + Sync {
    fn eval(&self, t: f64) -> Complex64;

    fn right_limit(&self, _t: f64) -> Option<Complex64> {
        None
    }
}

impl<F> GFunction for F
where
    F: Fn(f64) -> Complex64 + Send + Sync,
{
    fn eval(&self, t: f64) -> Complex64 {
        self(t)
    }
}

type CFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

struct FnPair {
    f: CFn,
    right: Option<CFn>,
}

impl GFunction for FnPair {
    fn eval(&self, t: f64) -> Complex64 {
        (self.f)(t)
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        self.right.as_ref().map(|r| r(t))
    }
}

/// A cheaply cloneable, shareable [`GFunction`].
#[derive(Clone)]
pub struct Integrand {
    inner: Arc<dyn GFunction>,
}

impl Integrand {
    pub fn new(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Integrand {
            inner: Arc::new(FnPair {
                f: Arc::new(f),
                right: None,
            }),
        }
    }

    /// A closure together with its exact right limit `t ↦ f(t^+)`.
    pub fn with_right_limit(
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        right: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Integrand {
            inner: Arc::new(FnPair {
                f: Arc::new(f),
                right: Some(Arc::new(right)),
            }),
        }
    }

    /// A real-valued integrand embedded with zero imaginary part.
    pub fn real(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(move |t| Complex64::new(f(t), 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::with_right_limit(move |_| c, move |_| c)
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    pub fn from_arc(inner: Arc<dyn GFunction>) -> Self {
        Integrand { inner }
    }

    pub fn from_gfunction(g: impl GFunction + 'static) -> Self {
        Integrand { inner: Arc::new(g) }
    }
}

impl GFunction for Integrand {
    fn eval(&self, t: f64) -> Complex64 {
        self.inner.eval(t)
    }
    fn right_limit(&self, t: f64) -> Option<Complex64> {
        self.inner.right_limit(t)
    }
}

impl std::fmt::Debug for Integrand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Integrand(..)")
    }
}

/// Tolerances for the adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of panel bisections per integral.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions > 0 {
            Ok(())
        } else {
            Err(Error::domain(
                "stieltjes_integral",
                "tolerances and the subdivision budget must be positive",
            ))
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// One Gauss–Kronrod panel: returns (Kronrod estimate, error estimate, ∫|f|).
fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = fc.norm() * WGK[7];
    let mut vals = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 7];
    for (i, v) in vals.iter_mut().enumerate() {
        let dx = h * XGK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        *v = (f1, f2);
        kron += (f1 + f2) * WGK[i];
        abs_k += (f1.norm() + f2.norm()) * WGK[i];
        if i % 2 == 1 {
            gauss += (f1 + f2) * WG[i / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).norm() * WGK[7];
    for (i, (f1, f2)) in vals.iter().enumerate() {
        asc += ((f1 - mean).norm() + (f2 - mean).norm()) * WGK[i];
    }
    let res = kron * h;
    let abs_k = abs_k * h.abs();
    let asc = asc * h.abs();
    let mut err = ((kron - gauss) * h).norm();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    if abs_k > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs_k);
    }
    (res, err, abs_k)
}

/// Adaptive integral of `f` over `[a, b]`, pre-split at the sorted `cuts`.
fn adaptive(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, cuts: &[f64], q: &QuadratureSettings) -> Result<Complex64> {
    if b <= a {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts.iter().copied().filter(|&c| c > a && c < b));
    edges.push(b);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut total = Complex64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for w in edges.windows(2) {
        let (v, e, _) = gk15(f, w[0], w[1]);
        total += v;
        total_err += e;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value: v,
            err: e,
        });
    }
    let min_width = 8.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
    let mut splits = 0usize;
    loop {
        let tol = q.abs_tol.max(q.rel_tol * total.norm());
        if total_err <= tol {
            return Ok(total);
        }
        let Some(worst) = heap.pop() else {
            return Ok(total);
        };
        if worst.b - worst.a <= min_width {
            // cannot refine further; keep the panel and accept what remains
            // only if everything else is already converged
            let rest = total_err - worst.err;
            if rest <= tol {
                return Ok(total);
            }
            heap.push(Panel { err: 0.0, ..worst });
            total_err = rest;
            continue;
        }
        if splits >= q.max_subdivisions {
            return Err(Error::Accuracy {
                estimate_re: total.re,
                estimate_im: total.im,
                error_bound: total_err,
            });
        }
        splits += 1;
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1, _) = gk15(f, worst.a, mid);
        let (v2, e2, _) = gk15(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }
}

fn check_range(d: &Derivator, t1: f64, t2: f64) -> Result<()> {
    let t_end = d.horizon();
    if !(t1 >= 0.0 && t2 <= t_end) {
        return Err(Error::domain(
            "stieltjes_integral",
            format!("interval [{t1}, {t2}) is not inside [0, {t_end}]"),
        ));
    }
    if t1 > t2 {
        return Err(Error::domain(
            "stieltjes_integral",
            format!("interval endpoints out of order: {t1} > {t2}"),
        ));
    }
    Ok(())
}

/// `∫_{[g^C(t1), g^C(t2))} f∘γ dx`, the continuous-part integral.
pub fn continuous_integral(d: &Derivator, f: &dyn GFunction, t1: f64, t2: f64, q: &QuadratureSettings) -> Result<Complex64> {
    check_range(d, t1, t2)?;
    q.validate()?;
    let cont = d.continuous();
    let x1 = cont.value(t1);
    let x2 = cont.value(t2);
    if x2 <= x1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut cuts: Vec<f64> = d
        .breakpoints()
        .iter()
        .filter(|&&b| b > t1 && b < t2)
        .map(|&b| cont.value(b))
        .collect();
    cuts.dedup();
    let h = |x: f64| f.eval(cont.pseudo_inverse_unchecked(x));
    adaptive(&h, x1, x2, &cuts, q)
}

/// `Σ_{t1 <= t_k < t2} f(t_k) Δ⁺g(t_k)`, exact.
pub fn jump_sum(d: &Derivator, f: &dyn GFunction, t1: f64, t2: f64) -> Complex64 {
    let js = d.jump_set();
    let lo = js.count_before(t1);
    let hi = js.count_before(t2);
    js.as_slice()[lo..hi]
        .iter()
        .map(|j| f.eval(j.t) * j.delta)
        .sum()
}

/// `∫_{[t1, t2)} f dμ_g`.
pub fn ls_integral_range(d: &Derivator, f: &dyn GFunction, t1: f64, t2: f64, q: &QuadratureSettings) -> Result<Complex64> {
    let c = continuous_integral(d, f, t1, t2, q)?;
    Ok(c + jump_sum(d, f, t1, t2))
}

/// `∫_{[0, t)} f dμ_g`. A jump exactly at `t` is excluded.
pub fn ls_integral(d: &Derivator, f: &dyn GFunction, t: f64, q: &QuadratureSettings) -> Result<Complex64> {
    ls_integral_range(d, f, 0.0, t, q)
}

/// `∫_{[0, t]} f dμ_g`, which adds `f(t) Δ⁺g(t)` to [`ls_integral`].
pub fn ls_integral_closed(d: &Derivator, f: &dyn GFunction, t: f64, q: &QuadratureSettings) -> Result<Complex64> {
    let base = ls_integral(d, f, t, q)?;
    let dt = d.jump_at(t);
    Ok(if dt > 0.0 { base + f.eval(t) * dt } else { base })
}

/// `μ_g([t1, t2)) = g(t2) − g(t1)`.
pub fn ls_measure(d: &Derivator, t1: f64, t2: f64) -> Result<f64> {
    check_range(d, t1, t2)?;
    Ok(d.g(t2) - d.g(t1))
}
