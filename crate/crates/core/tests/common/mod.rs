#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use stieltjes::{Complex64, ContinuousPart, Derivator, JumpSet, PointClass};

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Relative deviation against `max(1, |reference|)`.
pub fn rel(a: Complex64, reference: Complex64) -> f64 {
    (a - reference).norm() / reference.norm().max(1.0)
}

pub fn uniform_grid(t_end: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| t_end * i as f64 / (n - 1) as f64).collect()
}

fn random_jumps(rng: &mut StdRng, horizon: f64, max_jumps: usize, avoid: &[f64]) -> JumpSet {
    loop {
        let n = rng.gen_range(1..=max_jumps);
        let mut times: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..horizon - 0.1)).collect();
        times.sort_by(f64::total_cmp);
        let spaced = times.windows(2).all(|w| w[1] - w[0] > 0.05);
        let clear = times.iter().all(|t| avoid.iter().all(|a| (t - a).abs() > 0.05));
        if spaced && clear {
            let pairs = times.into_iter().map(|t| (t, rng.gen_range(0.1..1.5)));
            return JumpSet::new(pairs).expect("valid jumps");
        }
    }
}

/// A derivator with an identity, saw or piecewise-linear continuous part and
/// one to `max_jumps` jumps, on a window in roughly `[2, 5]`.
pub fn random_derivator(rng: &mut StdRng, max_jumps: usize) -> Derivator {
    match rng.gen_range(0..3) {
        0 => {
            let t_end = rng.gen_range(2.0..4.5);
            let jumps = random_jumps(rng, t_end, max_jumps, &[]);
            Derivator::new(ContinuousPart::identity(t_end).unwrap(), jumps).unwrap()
        }
        1 => {
            let t_end = 2.0 * rng.gen_range(1..3) as f64 + rng.gen_range(0.2..0.8);
            let ends: Vec<f64> = (1..6).map(|k| k as f64).collect();
            let jumps = random_jumps(rng, t_end, max_jumps, &ends);
            Derivator::new(ContinuousPart::staircase_saw(t_end).unwrap(), jumps).unwrap()
        }
        _ => {
            let t_end = rng.gen_range(2.5..4.5);
            let a = rng.gen_range(0.5..1.0);
            let b = a + rng.gen_range(0.3..0.8);
            let knots = vec![(0.0, rng.gen_range(0.5..2.0)), (a, 0.0), (b, rng.gen_range(0.5..2.0))];
            let jumps = random_jumps(rng, t_end, max_jumps, &[a, b]);
            Derivator::new(ContinuousPart::piecewise_linear(knots, t_end).unwrap(), jumps).unwrap()
        }
    }
}

/// Uniform points that are not inside a flat component, plus every jump time.
pub fn residual_grid(d: &Derivator, n: usize) -> Vec<f64> {
    let mut ts: Vec<f64> = uniform_grid(d.horizon(), n)
        .into_iter()
        .filter(|&t| matches!(d.classify(t), Ok(PointClass::Regular)))
        .collect();
    ts.extend(d.jumps().iter().map(|j| j.t));
    ts.sort_by(f64::total_cmp);
    ts
}
