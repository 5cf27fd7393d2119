//! Deterministic Nelder-Mead polishing for the non-smooth min objective.
//!
//! Compass search localizes an optimum; the simplex then tracks the
//! equal-area crease to full precision, which axis polling cannot do.

#[derive(Debug, Clone)]
pub struct NelderOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: u64,
    pub converged: bool,
}

/// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2) maximizing `eval`, with every trial vertex projected into
/// the feasible set. Infeasible vertices score negative infinity.
/// Terminates when the simplex diameter falls below `tol`.
pub fn nelder_mead_max(
    eval: &mut impl FnMut(&[f64]) -> Option<f64>,
    project: &impl Fn(&mut Vec<f64>) -> bool,
    x0: &[f64],
    init_size: f64,
    tol: f64,
    max_evals: u64,
) -> Option<NelderOutcome> {
    let k = x0.len();
    let mut evaluations: u64 = 0;
    let mut score = |y: &mut Vec<f64>, evals: &mut u64| -> f64 {
        if !project(y) {
            return f64::NEG_INFINITY;
        }
        *evals += 1;
        eval(y).unwrap_or(f64::NEG_INFINITY)
    };

    // Initial simplex around x0.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(k + 1);
    {
        let mut base = x0.to_vec();
        let f = score(&mut base, &mut evaluations);
        if !f.is_finite() {
            return None;
        }
        simplex.push((base.clone(), f));
        for dim in 0..k {
            let mut v = base.clone();
            v[dim] += init_size;
            let mut fv = score(&mut v, &mut evaluations);
            if v.iter().zip(&base).all(|(a, b)| a == b) || !fv.is_finite() {
                v = base.clone();
                v[dim] -= init_size;
                fv = score(&mut v, &mut evaluations);
            }
            simplex.push((v, fv));
        }
    }

    let diameter = |s: &[(Vec<f64>, f64)]| -> f64 {
        let mut d = 0.0f64;
        for i in 0..s.len() {
            for j in (i + 1)..s.len() {
                let dist = s[i]
                    .0
                    .iter()
                    .zip(&s[j].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max);
                d = d.max(dist);
            }
        }
        d
    };

    while evaluations < max_evals {
        // Best first (maximization).
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
        if diameter(&simplex) < tol {
            let (x, value) = simplex[0].clone();
            return Some(NelderOutcome { x, value, evaluations, converged: true });
        }
        let worst = simplex[k].clone();
        let second_worst = simplex[k - 1].1;
        let best = simplex[0].1;
        // Centroid of all but the worst.
        let mut centroid = vec![0.0f64; k];
        for (v, _) in simplex.iter().take(k) {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / k as f64;
            }
        }

        let point_at = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let mut reflected = point_at(1.0);
        let f_reflected = score(&mut reflected, &mut evaluations);
        if f_reflected > best {
            let mut expanded = point_at(2.0);
            let f_expanded = score(&mut expanded, &mut evaluations);
            simplex[k] = if f_expanded > f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected > second_worst {
            simplex[k] = (reflected, f_reflected);
            continue;
        }
        let mut contracted = if f_reflected > worst.1 {
            point_at(0.5)
        } else {
            point_at(-0.5)
        };
        let f_contracted = score(&mut contracted, &mut evaluations);
        if f_contracted > worst.1.max(f_reflected) {
            simplex[k] = (contracted, f_contracted);
            continue;
        }
        // Shrink toward the best vertex.
        let best_point = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let mut v: Vec<f64> = best_point
                .iter()
                .zip(&entry.0)
                .map(|(b, x)| b + 0.5 * (x - b))
                .collect();
            let fv = score(&mut v, &mut evaluations);
            *entry = (v, fv);
        }
    }

    simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, value) = simplex[0].clone();
    Some(NelderOutcome { x, value, evaluations, converged: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polishes_a_crease_to_high_precision() {
        // max min(x, y) with x + 2y <= 1: optimum 1/3 at (1/3, 1/3).
        let mut eval = |x: &[f64]| {
            if x[0] + 2.0 * x[1] <= 1.0 + 1e-12 && x.iter().all(|&v| v >= -1e-12) {
                Some(x[0].min(x[1]))
            } else {
                None
            }
        };
        let project = |_: &mut Vec<f64>| true;
        let out = nelder_mead_max(&mut eval, &project, &[0.2, 0.25], 0.05, 1e-12, 100_000).unwrap();
        assert!(out.converged);
        assert!((out.value - 1.0 / 3.0).abs() < 1e-10, "value {}", out.value);
        assert!((out.x[0] - 1.0 / 3.0).abs() < 1e-9);
        assert!((out.x[1] - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn respects_projection() {
        // Unconstrained max of -(x^2) but projected to x >= 1.
        let mut eval = |x: &[f64]| Some(-x[0] * x[0]);
        let project = |x: &mut Vec<f64>| {
            if x[0] < 1.0 {
                x[0] = 1.0;
            }
            true
        };
        let out = nelder_mead_max(&mut eval, &project, &[2.0], 0.1, 1e-10, 10_000).unwrap();
        assert!((out.x[0] - 1.0).abs() < 1e-8);
    }
}
