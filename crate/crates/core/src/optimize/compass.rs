//! Compass (pattern) search with shrinking steps and randomized polling.
//!
//! The objective is a min of two areas, so its maximizers sit on a
//! non-smooth equal-area crease. Pure coordinate polling stalls there
//! (every axis move leaves the crease and loses), so each sweep also polls
//! a batch of fresh seeded random directions; as the step shrinks the
//! accumulated direction set becomes dense enough to track the crease.

use crate::rng::SplitMix64;

#[derive(Debug, Clone)]
pub struct CompassOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: u64,
    pub converged: bool,
}

/// Maximizes `eval` from `x0`. The probe set per sweep is +/- every
/// coordinate plus `4k + 8` random unit directions; the best improving
/// probe is taken, and the step halves when none improves. Terminates when
/// the step drops below `tol` (converged) or the budget runs out.
///
/// `eval` returns `None` for infeasible points; `project` pulls a point
/// back into the feasible set, returning false when it cannot.
pub fn compass_search(
    eval: &mut impl FnMut(&[f64]) -> Option<f64>,
    project: &impl Fn(&mut Vec<f64>) -> bool,
    x0: &[f64],
    initial_step: f64,
    tol: f64,
    max_evals: u64,
    seed: u64,
) -> Option<CompassOutcome> {
    let mut x = x0.to_vec();
    if !project(&mut x) {
        return None;
    }
    let mut evaluations: u64 = 0;
    let fx = eval(&x)?;
    evaluations += 1;
    let mut fx = fx;

    let k = x.len();
    let random_per_sweep = 4 * k + 8;
    let mut rng = SplitMix64::new(seed);
    let mut step = initial_step;
    while step >= tol && evaluations < max_evals {
        let mut best: Option<(Vec<f64>, f64)> = None;
        let mut probe = |y: Vec<f64>, fx: f64, best: &mut Option<(Vec<f64>, f64)>, evals: &mut u64| {
            if let Some(v) = eval(&y) {
                *evals += 1;
                if v > fx + 1e-15 && best.as_ref().is_none_or(|(_, bv)| v > *bv) {
                    *best = Some((y, v));
                }
            } else {
                *evals += 1;
            }
        };
        for dim in 0..k {
            for sign in [1.0f64, -1.0] {
                let mut y = x.clone();
                y[dim] += sign * step;
                if !project(&mut y) || y.iter().zip(&x).all(|(a, b)| a == b) {
                    continue;
                }
                probe(y, fx, &mut best, &mut evaluations);
            }
        }
        for _ in 0..random_per_sweep {
            let dir = rng.next_unit_vector(k);
            let mut y: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + step * di).collect();
            if !project(&mut y) || y.iter().zip(&x).all(|(a, b)| a == b) {
                continue;
            }
            probe(y, fx, &mut best, &mut evaluations);
        }
        match best {
            Some((y, v)) => {
                x = y;
                fx = v;
            }
            None => step *= 0.5,
        }
    }
    Some(CompassOutcome { x, value: fx, evaluations, converged: step < tol })
}
