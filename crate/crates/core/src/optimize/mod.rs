//! Derivative-free maximization of `min(Area(W), Area(B))` over family
//! parameter domains.
//!
//! The objective is non-smooth (a min of piecewise quadratics), so the
//! refinement step is compass search with shrinking steps rather than a
//! gradient method. Closed-form mode evaluates the registered polynomials
//! inside their regime and silently falls back to the exact engine outside
//! it, where the polynomials cannot be trusted.

mod compass;
mod constants;
mod nelder;
mod root;
mod stationary;

pub use compass::{compass_search, CompassOutcome};
pub use nelder::{nelder_mead_max, NelderOutcome};
pub use constants::{constants_csv, constants_table, render_constants_table, ConstantsRow};
pub use root::equal_area_root;
pub use stationary::{check_local_optimum, StationarityVerdict};

use crate::families::{ExactValue, FamilyError, FamilySpec, ParamPoint};
use crate::rational::{snap_f64, to_f64, Rational};
use num_traits::Signed;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Engine,
    ClosedForm,
}

impl EvalMode {
    pub fn label(self) -> &'static str {
        match self {
            EvalMode::Engine => "engine",
            EvalMode::ClosedForm => "closed-form",
        }
    }
}

pub struct Objective<'a> {
    pub family: &'a FamilySpec,
    pub mode: EvalMode,
}

impl<'a> Objective<'a> {
    pub fn new(family: &'a FamilySpec, mode: EvalMode) -> Self {
        Objective { family, mode }
    }

    /// Closed form where one exists, engine otherwise.
    pub fn auto(family: &'a FamilySpec) -> Self {
        let mode = if family.has_closed_black() {
            EvalMode::ClosedForm
        } else {
            EvalMode::Engine
        };
        Objective { family, mode }
    }

    /// Exact objective value at a rational point.
    pub fn evaluate_exact(&self, p: &ParamPoint) -> Result<Rational, FamilyError> {
        self.family.check_domain(p)?;
        if self.mode == EvalMode::ClosedForm
            && self.family.has_closed_black()
            && self.family.in_regime(p)
        {
            let white = self.family.closed_white_area(p);
            let black = self.family.closed_black_area(p)?.value;
            return Ok(white.min(black));
        }
        let (white, black) = self.family.engine_areas(p)?;
        Ok(white.min(black))
    }

    /// Float objective value; `None` outside the domain. The closed-form
    /// path is pure float polynomial evaluation; out of regime (or for
    /// optimizer-only families) the call goes through the exact engine at
    /// the snapped point.
    pub fn evaluate_f64(&self, x: &[f64]) -> Option<f64> {
        if !self.family.domain_satisfied_f64(x, 1e-9) {
            return None;
        }
        if self.mode == EvalMode::ClosedForm
            && self.family.has_closed_black()
            && self.family.in_regime_f64(x, 1e-9)
        {
            let white = (self.family.closed_white_f64)(x);
            let (black, _) = self.family.closed_black_f64(x)?;
            return Some(white.min(black));
        }
        let p = self.exact_point(x)?;
        let (white, black) = self.family.engine_areas(&p).ok()?;
        Some(to_f64(&white.min(black)))
    }

    /// Snaps a float vector to an exactly feasible rational point,
    /// projecting back onto any facet that float noise stepped over.
    pub fn exact_point(&self, x: &[f64]) -> Option<ParamPoint> {
        let values: Vec<Rational> = x.iter().map(|&v| snap_f64(v, 1e-12)).collect();
        if let Ok(p) = ParamPoint::new(self.family, values.clone()) {
            if self.family.check_domain(&p).is_ok() {
                return Some(p);
            }
        }
        self.family.repair_exact(values)
    }
}

#[derive(Debug, Clone)]
pub struct MaximizeOptions {
    pub grid_density: usize,
    pub multistarts: usize,
    pub seed: u64,
    /// Compass terminates when the step falls below this.
    pub tol: f64,
    pub initial_step: f64,
    pub max_evals_per_start: u64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            grid_density: 5,
            multistarts: 16,
            seed: 0,
            tol: 1e-10,
            initial_step: 0.05,
            max_evals_per_start: 20_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalOptimum {
    pub params: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizationResult {
    pub family: String,
    pub mode: String,
    /// Best point found (floats) and its rational snap.
    pub params: Vec<f64>,
    pub params_exact: Vec<String>,
    pub value: f64,
    pub white: ExactValue,
    pub black: ExactValue,
    /// |white - black| at the snapped point.
    pub equal_area_gap: f64,
    pub evaluations: u64,
    pub starts: usize,
    pub seed: u64,
    pub converged: bool,
    /// Distinct refined optima, best first.
    pub local_optima: Vec<LocalOptimum>,
}

impl OptimizationResult {
    pub fn to_csv(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|v| format!("{v:.12}"))
            .collect::<Vec<_>>()
            .join(";");
        format!(
            "family,mode,value,white,black,gap,params,seed,evaluations,converged\n{},{},{:.12},{:.12},{:.12},{:.3e},{},{},{},{}\n",
            self.family,
            self.mode,
            self.value,
            self.white.value,
            self.black.value,
            self.equal_area_gap,
            params,
            self.seed,
            self.evaluations,
            self.converged
        )
    }
}

/// Total order: higher value first, then lexicographically smaller point.
fn cmp_by_value_then_lex(a: &(Vec<f64>, f64), b: &(Vec<f64>, f64)) -> std::cmp::Ordering {
    b.1.partial_cmp(&a.1)
        .expect("objective values are finite")
        .then_with(|| cmp_lex(&a.0, &b.0))
}

fn cmp_lex(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y).expect("finite coordinates") {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Deterministic multistart maximization: coarse feasible grid scan, top-k
/// starts (plus seeded random fills), compass refinement, duplicate
/// clustering. Ties break toward the lexicographically smaller point.
pub fn maximize(obj: &Objective, opts: &MaximizeOptions) -> Result<OptimizationResult, FamilyError> {
    let family = obj.family;
    let k = family.parameters.len();
    let mut evaluations: u64 = 0;

    // Grid scan over the unit box, filtered to the feasible polytope.
    let density = opts.grid_density.max(2);
    let mut candidates: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let x: Vec<f64> = idx
            .iter()
            .map(|&i| i as f64 / (density - 1) as f64)
            .collect();
        if family.domain_satisfied_f64(&x, 1e-12) {
            if let Some(v) = obj.evaluate_f64(&x) {
                evaluations += 1;
                candidates.push((x, v));
            }
        }
        // Odometer increment.
        let mut dim = 0;
        loop {
            if dim == k {
                break;
            }
            idx[dim] += 1;
            if idx[dim] < density {
                break;
            }
            idx[dim] = 0;
            dim += 1;
        }
        if dim == k {
            break;
        }
    }

    // Top up with random feasible starts when the grid is too sparse.
    if candidates.len() < opts.multistarts {
        let need = opts.multistarts - candidates.len();
        let extra = crate::families::sampling::hit_and_run(family, need, opts.seed);
        for x in extra {
            if let Some(v) = obj.evaluate_f64(&x) {
                evaluations += 1;
                candidates.push((x, v));
            }
        }
    }
    candidates.sort_by(cmp_by_value_then_lex);
    candidates.truncate(opts.multistarts.max(1));

    // Refinement from every start: a coarse compass localizes, then a
    // Nelder-Mead simplex tracks the equal-area crease to full precision.
    let mut refined: Vec<(Vec<f64>, f64, bool)> = Vec::new();
    for (start_idx, (start, _)) in candidates.iter().enumerate() {
        let mut eval = |x: &[f64]| obj.evaluate_f64(x);
        let project = |x: &mut Vec<f64>| family.project_into_domain_f64(x);
        let coarse_tol = opts.tol.max(1e-5);
        let Some(coarse) = compass_search(
            &mut eval,
            &project,
            start,
            opts.initial_step,
            coarse_tol,
            opts.max_evals_per_start / 2,
            opts.seed.wrapping_add(start_idx as u64),
        ) else {
            continue;
        };
        evaluations += coarse.evaluations;
        let budget = opts.max_evals_per_start.saturating_sub(coarse.evaluations).max(1000);
        match nelder_mead_max(&mut eval, &project, &coarse.x, 1e-3, opts.tol, budget) {
            Some(polished) if polished.value >= coarse.value => {
                evaluations += polished.evaluations;
                refined.push((polished.x, polished.value, polished.converged));
            }
            Some(polished) => {
                evaluations += polished.evaluations;
                refined.push((coarse.x, coarse.value, coarse.converged));
            }
            None => refined.push((coarse.x, coarse.value, coarse.converged)),
        }
    }
    if refined.is_empty() {
        return Err(FamilyError::DomainViolation(
            "no feasible starting point found".to_string(),
        ));
    }

    refined.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("objective values are finite")
            .then_with(|| cmp_lex(&a.0, &b.0))
    });

    // Cluster refinements into distinct local optima.
    let mut local_optima: Vec<LocalOptimum> = Vec::new();
    for (x, v, _) in &refined {
        let duplicate = local_optima.iter().any(|o| {
            o.params
                .iter()
                .zip(x)
                .all(|(a, b)| (a - b).abs() < 1e-4)
        });
        if !duplicate {
            local_optima.push(LocalOptimum { params: x.clone(), value: *v });
        }
    }

    let (best_x, _, best_converged) = refined[0].clone();
    let (snapped, white, black) = snap_point(obj, &best_x)
        .ok_or_else(|| FamilyError::DomainViolation("snap failed".to_string()))?;
    debug_assert!(family.check_domain(&snapped).is_ok());
    let value = white.clone().min(black.clone());
    let gap = to_f64(&(&white - &black).abs());

    Ok(OptimizationResult {
        family: family.name.to_string(),
        mode: obj.mode.label().to_string(),
        params: best_x,
        params_exact: snapped
            .values()
            .iter()
            .map(crate::rational::format_rational)
            .collect(),
        value: to_f64(&value),
        white: ExactValue::of(&white),
        black: ExactValue::of(&black),
        equal_area_gap: gap,
        evaluations,
        starts: candidates.len(),
        seed: opts.seed,
        converged: best_converged,
        local_optima,
    })
}

/// Snap with a coarse tolerance first (to catch exact rational optima such
/// as 1/3), preferring the first feasible snap whose engine areas balance
/// within 1e-8; otherwise the finest feasible snap wins.
fn snap_point(obj: &Objective, x: &[f64]) -> Option<(ParamPoint, Rational, Rational)> {
    let mut finest: Option<(ParamPoint, Rational, Rational)> = None;
    for tol in [1e-5, 1e-7, 1e-9, 1e-12] {
        let values: Vec<Rational> = x.iter().map(|&v| snap_f64(v, tol)).collect();
        let Ok(p) = ParamPoint::new(obj.family, values) else {
            continue;
        };
        if obj.family.check_domain(&p).is_err() {
            continue;
        }
        let Ok((white, black)) = obj.family.engine_areas(&p) else {
            continue;
        };
        let gap = to_f64(&(&white - &black).abs());
        if gap <= 1e-8 {
            return Some((p, white, black));
        }
        finest = Some((p, white, black));
    }
    if finest.is_some() {
        return finest;
    }
    let p = obj.exact_point(x)?;
    let (white, black) = obj.family.engine_areas(&p).ok()?;
    Some((p, white, black))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::find;
    use crate::rational::rat;

    #[test]
    fn evaluate_examples() {
        let rect = find("rectangle").unwrap();
        let obj = Objective::auto(rect);
        let p = ParamPoint::new(rect, vec![rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(obj.evaluate_exact(&p).unwrap(), rat(1, 9));

        let jubin = find("jubin").unwrap();
        let obj = Objective::auto(jubin);
        let p = crate::families::jubin::optimum_point();
        assert_eq!(obj.evaluate_exact(&p).unwrap(), rat(7, 48));

        let opp = find("two_triangles_opposite").unwrap();
        let obj = Objective::auto(opp);
        // min(a^2, 1/4 - a^2) at a = 1/4 is 1/16.
        let p = ParamPoint::new(opp, vec![rat(1, 4)]).unwrap();
        assert_eq!(obj.evaluate_exact(&p).unwrap(), rat(1, 16));
        assert!((obj.evaluate_f64(&[0.25]).unwrap() - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn evaluate_out_of_domain_errors() {
        let rect = find("rectangle").unwrap();
        let obj = Objective::auto(rect);
        let p = ParamPoint::new(rect, vec![rat(3, 2), rat(1, 3)]).unwrap();
        assert!(obj.evaluate_exact(&p).is_err());
        assert!(obj.evaluate_f64(&[1.5, 0.3]).is_none());
    }

    #[test]
    fn maximize_rectangle_recovers_one_ninth() {
        let family = find("rectangle").unwrap();
        let obj = Objective::auto(family);
        let result = maximize(&obj, &MaximizeOptions::default()).unwrap();
        assert!((result.value - 1.0 / 9.0).abs() < 1e-6, "value {}", result.value);
        assert!((result.params[0] - 1.0 / 3.0).abs() < 1e-6);
        assert!((result.params[1] - 1.0 / 3.0).abs() < 1e-6);
        assert!(result.equal_area_gap <= 1e-8);
        assert!(result.converged);
    }

    #[test]
    fn maximize_triangle_recovers_one_eighth() {
        let family = find("triangle").unwrap();
        let obj = Objective::auto(family);
        let result = maximize(&obj, &MaximizeOptions::default()).unwrap();
        assert!((result.value - 0.125).abs() < 1e-6);
        assert!((result.params[0] - 0.5).abs() < 1e-6);
        // The snap lands on the exact optimum.
        assert_eq!(result.params_exact, vec!["1/2".to_string()]);
        assert_eq!(result.white.exact, "1/8");
        assert_eq!(result.black.exact, "1/8");
    }

    #[test]
    fn maximize_hexagon_finds_surd_and_degenerate_point() {
        let family = find("hexagon").unwrap();
        let obj = Objective::auto(family);
        let result = maximize(&obj, &MaximizeOptions::default()).unwrap();
        let t = (3.0 - 3f64.sqrt()) / 6.0;
        assert!(
            (result.value - (2.0 - 3f64.sqrt()) / 2.0).abs() < 1e-6,
            "value {}",
            result.value
        );
        for i in 0..4 {
            assert!((result.params[i] - t).abs() < 1e-5, "param {i} = {}", result.params[i]);
        }
        assert!(result.equal_area_gap <= 1e-8);
        // The degenerate triangle optimum a=c=d=1/2, b=0 is also reported.
        let degenerate = result.local_optima.iter().find(|o| {
            (o.value - 0.125).abs() < 1e-6
                && (o.params[0] - 0.5).abs() < 1e-3
                && o.params[1].abs() < 1e-3
                && (o.params[2] - 0.5).abs() < 1e-3
                && (o.params[3] - 0.5).abs() < 1e-3
        });
        assert!(
            degenerate.is_some(),
            "local optima: {:?}",
            result.local_optima
        );
    }

    #[test]
    fn maximize_is_deterministic_bit_for_bit() {
        let family = find("two_squares").unwrap();
        let obj = Objective::auto(family);
        let opts = MaximizeOptions { seed: 7, ..Default::default() };
        let a = maximize(&obj, &opts).unwrap();
        let b = maximize(&obj, &opts).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn maximize_optimizer_only_family_through_engine() {
        let family = find("three_squares").unwrap();
        let obj = Objective::auto(family);
        assert!(matches!(obj.mode, EvalMode::Engine));
        let opts = MaximizeOptions { grid_density: 9, multistarts: 6, ..Default::default() };
        let result = maximize(&obj, &opts).unwrap();
        assert!((0.15..=0.18).contains(&result.params[0]), "a = {}", result.params[0]);
        assert!(result.equal_area_gap <= 1e-8);
    }
}
