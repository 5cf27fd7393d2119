//! Numerical local-optimality certification: random direction probing in
//! place of a symbolic Lagrange-multiplier analysis.

use super::Objective;
use crate::families::FamilyError;
use crate::rng::SplitMix64;
use serde::Serialize;

pub const IMPROVEMENT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct StationarityVerdict {
    pub is_local_max: bool,
    /// Largest objective gain over the center found by any probe (>= 0).
    pub improvement: f64,
    pub worst_direction: Vec<f64>,
    pub probe_radius: f64,
    pub probes: u64,
}

/// Probes `n_directions` random unit directions plus every +/- coordinate
/// direction at radii `{r, r/4, r/16}`, projecting each probe into the
/// domain polytope. Local maximality holds when no probe beats the center
/// value by more than 1e-9.
pub fn check_local_optimum(
    obj: &Objective,
    center: &[f64],
    probe_radius: f64,
    n_directions: usize,
    seed: u64,
) -> Result<StationarityVerdict, FamilyError> {
    let k = obj.family.parameters.len();
    assert_eq!(center.len(), k);
    let f0 = obj
        .evaluate_f64(center)
        .ok_or_else(|| FamilyError::DomainViolation("center is infeasible".to_string()))?;

    let mut rng = SplitMix64::new(seed);
    let mut directions: Vec<Vec<f64>> = Vec::with_capacity(n_directions + 2 * k);
    for dim in 0..k {
        for sign in [1.0f64, -1.0] {
            let mut d = vec![0.0; k];
            d[dim] = sign;
            directions.push(d);
        }
    }
    for _ in 0..n_directions {
        directions.push(rng.next_unit_vector(k));
    }

    let mut probes = 0u64;
    let mut improvement = 0.0f64;
    let mut worst_direction = vec![0.0; k];
    for dir in &directions {
        for radius in [probe_radius, probe_radius / 4.0, probe_radius / 16.0] {
            let mut y: Vec<f64> = center.iter().zip(dir).map(|(c, d)| c + radius * d).collect();
            if !obj.family.project_into_domain_f64(&mut y) {
                continue;
            }
            if y.iter().zip(center).all(|(a, b)| (a - b).abs() < 1e-15) {
                continue;
            }
            if let Some(v) = obj.evaluate_f64(&y) {
                probes += 1;
                if v - f0 > improvement {
                    improvement = v - f0;
                    worst_direction = dir.clone();
                }
            }
        }
    }

    Ok(StationarityVerdict {
        is_local_max: improvement <= IMPROVEMENT_TOLERANCE,
        improvement,
        worst_direction,
        probe_radius,
        probes,
    })
}
