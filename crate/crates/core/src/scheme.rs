//! Predictor-corrector integrator for systems `y'_g = F(t, y)`.
//!
//! Each step from `t_j` to `t_{j+1}` applies an exact jump update, a forward
//! Euler predictor and a trapezoidal corrector, all measured in increments of
//! `g`. The grid contains every jump time, so the continuous steps never cross
//! a jump.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use crate::derivator::Derivator;
use crate::error::{Error, Result};
use crate::first_order::GSinCos;
use crate::right_offset;

pub type State = Vec<Complex64>;

/// Right-hand side `F(t, y)` of a system of Stieltjes equations.
pub trait SystemRhs: Send + Sync {
    fn dim(&self) -> usize;

    fn eval(&self, t: f64, y: &[Complex64], out: &mut [Complex64]);

    /// `F(t⁺, y)`, evaluated at `t + eps` unless overridden.
    fn eval_right(&self, t: f64, eps: f64, y: &[Complex64], out: &mut [Complex64]) {
        self.eval(t + eps, y, out);
    }
}

/// A system given by a closure.
pub struct FnSystem<F> {
    pub dim: usize,
    pub f: F,
}

impl<F> SystemRhs for FnSystem<F>
where
    F: Fn(f64, &[Complex64], &mut [Complex64]) + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn eval(&self, t: f64, y: &[Complex64], out: &mut [Complex64]) {
        (self.f)(t, y, out)
    }
}

/// The forced oscillator as a first-order system: `y = (v'_g, v)` and
/// `F(t, y) = (cos_g(ω₀;0,t) − ω₀² y₂, y₁)`.
pub struct OscillatorSystem {
    omega0: f64,
    cos: GSinCos,
}

impl OscillatorSystem {
    pub fn new(d: &Derivator, omega0: f64) -> Result<Self> {
        Ok(OscillatorSystem {
            omega0,
            cos: crate::first_order::g_sin_cos(d, omega0)?,
        })
    }
}

impl SystemRhs for OscillatorSystem {
    fn dim(&self) -> usize {
        2
    }
    fn eval(&self, t: f64, y: &[Complex64], out: &mut [Complex64]) {
        let c = self.cos.cos(t).unwrap_or(Complex64::new(f64::NAN, 0.0));
        out[0] = c - y[1] * (self.omega0 * self.omega0);
        out[1] = y[0];
    }

    /// Uses the exact post-jump value `cos_g(ω₀;0,t⁺)` rather than an offset.
    fn eval_right(&self, t: f64, _eps: f64, y: &[Complex64], out: &mut [Complex64]) {
        let c = self.cos.cos_right(t).unwrap_or(Complex64::new(f64::NAN, 0.0));
        out[0] = c - y[1] * (self.omega0 * self.omega0);
        out[1] = y[0];
    }
}

/// Sorted integration nodes containing `0`, `T` and every jump.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeGrid {
    times: Vec<f64>,
    h: f64,
}

impl SchemeGrid {
    /// Uniform nodes `j·h` plus `T`, with every jump time inserted. A uniform
    /// node within `1e-12·T` of a jump or of `T` is replaced by it.
    pub fn uniform_with_jumps(d: &Derivator, h: f64) -> Result<Self> {
        let t_end = d.horizon();
        if !(h > 0.0 && h.is_finite() && h <= t_end) {
            return Err(Error::domain("scheme", format!("step {h} must lie in (0, {t_end}]")));
        }
        let tol = 1e-12 * t_end;
        let n = (t_end / h).floor() as usize;
        let mut times: Vec<f64> = (0..=n).map(|j| j as f64 * h).filter(|&t| t < t_end - tol).collect();
        for j in d.jumps() {
            match times.iter().position(|&t| (t - j.t).abs() <= tol) {
                Some(i) => times[i] = j.t,
                None => times.push(j.t),
            }
        }
        times.push(t_end);
        times.sort_by(f64::total_cmp);
        times.dedup();
        Self::from_times(d, times, h)
    }

    /// A grid from explicit times. Must start at 0, end at `T`, be strictly
    /// increasing and contain every jump.
    pub fn from_times(d: &Derivator, times: Vec<f64>, h: f64) -> Result<Self> {
        let ok = times.first() == Some(&0.0)
            && times.last() == Some(&d.horizon())
            && times.windows(2).all(|w| w[1] > w[0]);
        if !ok {
            return Err(Error::domain(
                "scheme",
                "grid must be strictly increasing from 0 to the horizon",
            ));
        }
        if let Some(j) = d.jumps().iter().find(|j| times.binary_search_by(|t| t.total_cmp(&j.t)).is_err()) {
            return Err(Error::domain("scheme", format!("grid misses the jump at {}", j.t)));
        }
        Ok(SchemeGrid { times, h })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

fn axpy(y: &[Complex64], a: f64, x: &[Complex64], out: &mut [Complex64]) {
    for ((o, yi), xi) in out.iter_mut().zip(y).zip(x) {
        *o = yi + xi * a;
    }
}

/// Runs the scheme and returns the state at every grid node.
pub fn integrate(d: &Derivator, rhs: &dyn SystemRhs, y0: &[Complex64], grid: &SchemeGrid) -> Result<Vec<State>> {
    let n = rhs.dim();
    if y0.len() != n {
        return Err(Error::domain(
            "scheme",
            format!("initial state has dimension {} but the system has {n}", y0.len()),
        ));
    }
    let eps = right_offset(d.horizon());
    let times = grid.times();
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(times.len());
    out.push(y0.to_vec());
    let (mut f0, mut fp, mut f1) = (vec![zero; n], vec![zero; n], vec![zero; n]);
    let (mut yp, mut ys, mut ynext) = (vec![zero; n], vec![zero; n], vec![zero; n]);
    for j in 0..times.len() - 1 {
        let (t, t1) = (times[j], times[j + 1]);
        let y = &out[j];
        let dl = d.jump_at(t);
        rhs.eval(t, y, &mut f0);
        if dl > 0.0 {
            axpy(y, dl, &f0, &mut yp);
            rhs.eval_right(t, eps, &yp, &mut fp);
        } else {
            yp.copy_from_slice(y);
            fp.copy_from_slice(&f0);
        }
        let dg = d.g(t1) - d.g_right(t);
        axpy(&yp, dg, &fp, &mut ys);
        rhs.eval(t1, &ys, &mut f1);
        for i in 0..n {
            ynext[i] = yp[i] + (fp[i] + f1[i]) * (0.5 * dg);
        }
        if ynext.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Divergence { node: j + 1, t: t1 });
        }
        out.push(ynext.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub e_h: f64,
    /// `log(e_prev/e_h)/log(h_prev/h)` against the previous row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log e_h` against `log h`.
    pub fitted_order: f64,
}

impl ConvergenceTable {
    pub fn write_csv(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "h,e_h,order")?;
        for r in &self.rows {
            match r.order {
                Some(o) => writeln!(w, "{:.16e},{:.16e},{:.16e}", r.h, r.e_h, o)?,
                None => writeln!(w, "{:.16e},{:.16e},", r.h, r.e_h)?,
            }
        }
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_csv(&mut f)?;
        f.flush()?;
        Ok(())
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `e_h = max_j |exact(t_j) − y_{component, j}|` for each step size. Rows run
/// concurrently, one thread per step size.
pub fn convergence_study(
    d: &Derivator,
    rhs: &dyn SystemRhs,
    y0: &[Complex64],
    component: usize,
    exact: &(dyn Fn(f64) -> Result<Complex64> + Sync),
    h_list: &[f64],
) -> Result<ConvergenceTable> {
    if component >= rhs.dim() {
        return Err(Error::domain("scheme", format!("component {component} out of range")));
    }
    let errors: Vec<Result<f64>> = std::thread::scope(|s| {
        let handles: Vec<_> = h_list
            .iter()
            .map(|&h| {
                s.spawn(move || -> Result<f64> {
                    let grid = SchemeGrid::uniform_with_jumps(d, h)?;
                    let ys = integrate(d, rhs, y0, &grid)?;
                    let mut e = 0.0f64;
                    for (t, y) in grid.times().iter().zip(&ys) {
                        e = e.max((exact(*t)? - y[component]).norm());
                    }
                    Ok(e)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("convergence row panicked")).collect()
    });
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(h_list.len());
    for (i, (&h, e)) in h_list.iter().zip(errors).enumerate() {
        let e_h = e?;
        let order = (i > 0).then(|| {
            let prev = rows[i - 1];
            (prev.e_h / e_h).ln() / (prev.h / h).ln()
        });
        rows.push(ConvergenceRow { h, e_h, order });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.h.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.e_h.ln()).collect();
    let fitted_order = if rows.len() >= 2 { fitted_slope(&xs, &ys) } else { f64::NAN };
    log::info!("[scheme] convergence rows: {rows:?}, fitted order {fitted_order:.4}");
    Ok(ConvergenceTable { rows, fitted_order })
}
