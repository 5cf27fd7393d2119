//! Random feasible points for families.
//!
//! Low-dimensional families use plain rejection from the unit box; the
//! seven-parameter pentagon polytope is too thin for that and gets a
//! hit-and-run walk from its registered interior point. Every returned
//! point is an exact dyadic rational verified against the domain (and,
//! where requested, regime) constraints.

use super::{FamilySpec, ParamPoint};
use crate::rational::from_f64_exact;
use crate::rng::SplitMix64;

/// Feasible segment of the line `x + t * dir` inside the domain polytope.
fn feasible_segment(family: &FamilySpec, x: &[f64], dir: &[f64]) -> (f64, f64) {
    let mut t_lo = -2.0f64;
    let mut t_hi = 2.0f64;
    for cst in &family.domain {
        let slack = cst.eval_f64(x);
        let rate: f64 = cst
            .coeffs
            .iter()
            .zip(dir)
            .map(|(c, d)| crate::rational::to_f64(c) * d)
            .sum();
        if rate.abs() < 1e-14 {
            continue;
        }
        let bound = -slack / rate;
        if rate > 0.0 {
            t_lo = t_lo.max(bound);
        } else {
            t_hi = t_hi.min(bound);
        }
    }
    (t_lo, t_hi)
}

/// Hit-and-run walk over the domain polytope (float coordinates, strictly
/// interior by a relative margin). Requires a registered interior point.
pub fn hit_and_run(family: &FamilySpec, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = SplitMix64::new(seed);
    let k = family.parameters.len();
    let mut x = family
        .interior_point
        .clone()
        .unwrap_or_else(|| panic!("family `{}` has no interior point", family.name));
    debug_assert!(family.domain_satisfied_f64(&x, 0.0));

    let burn_in = 64;
    let mut out = Vec::with_capacity(count);
    let mut step = 0usize;
    while out.len() < count {
        step += 1;
        let dir = rng.next_unit_vector(k);
        let (t_lo, t_hi) = feasible_segment(family, &x, &dir);
        if t_lo >= t_hi {
            continue;
        }
        let margin = 1e-4 * (t_hi - t_lo);
        let t = rng.next_range(t_lo + margin, t_hi - margin);
        let candidate: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + t * di).collect();
        if !family.domain_satisfied_f64(&candidate, 0.0) {
            continue;
        }
        x = candidate;
        if step > burn_in {
            out.push(x.clone());
        }
    }
    out
}

fn to_exact_point(family: &FamilySpec, x: &[f64]) -> Option<ParamPoint> {
    let values = x.iter().map(|&v| from_f64_exact(v)).collect::<Option<Vec<_>>>()?;
    let p = ParamPoint::new(family, values).ok()?;
    family.check_domain(&p).ok()?;
    Some(p)
}

/// Exact feasible samples over the domain.
pub fn sample_domain(family: &FamilySpec, count: usize, seed: u64) -> Vec<ParamPoint> {
    sample_filtered(family, count, seed, false)
}

/// Exact feasible samples that also satisfy the regime constraints.
pub fn sample_in_regime(family: &FamilySpec, count: usize, seed: u64) -> Vec<ParamPoint> {
    sample_filtered(family, count, seed, true)
}

fn sample_filtered(
    family: &FamilySpec,
    count: usize,
    seed: u64,
    require_regime: bool,
) -> Vec<ParamPoint> {
    let k = family.parameters.len();
    let mut out = Vec::with_capacity(count);
    if k >= 5 {
        // Thin polytope: walk instead of rejecting.
        let mut offset = 0u64;
        while out.len() < count {
            let want = count - out.len();
            for x in hit_and_run(family, want + 8, seed.wrapping_add(offset)) {
                if out.len() == count {
                    break;
                }
                if require_regime && !family.in_regime_f64(&x, 0.0) {
                    continue;
                }
                if let Some(p) = to_exact_point(family, &x) {
                    if !require_regime || family.in_regime(&p) {
                        out.push(p);
                    }
                }
            }
            offset += 1;
        }
        return out;
    }
    let mut rng = SplitMix64::new(seed);
    let mut guard = 0u64;
    while out.len() < count {
        guard += 1;
        assert!(
            guard < 4_000_000,
            "rejection sampling starved for family `{}`",
            family.name
        );
        let x: Vec<f64> = (0..k).map(|_| rng.next_f64()).collect();
        if !family.domain_satisfied_f64(&x, 0.0) {
            continue;
        }
        if require_regime && !family.in_regime_f64(&x, 0.0) {
            continue;
        }
        if let Some(p) = to_exact_point(family, &x) {
            if !require_regime || family.in_regime(&p) {
                out.push(p);
            }
        }
    }
    out
}
