//! The configuration-family catalog.
//!
//! Each family couples a white-region builder with its closed-form white and
//! black areas. Closed black areas are piecewise polynomials guarded by
//! linear inequalities; each family also carries a *regime*: the linear
//! constraints (on top of the domain) inside which the closed form agrees
//! with the geometry engine exactly. Outside the regime the closed form is
//! still evaluable but must not be trusted - callers fall back to the
//! engine.
//!
//! Regimes are asserted on the domain interior; configurations whose white
//! cells degenerate to zero area (for example a rectangle with `a = 0`)
//! keep casting shadows in the printed formulas but not in the engine, and
//! are excluded.

mod defs;
pub mod jubin;
pub mod locus;
pub mod sampling;

pub use locus::{solution_locus_check, LocusCase, LocusReport, LocusSample};

use crate::geometry::{black_region, GeometryError, Region};
use crate::rational::{format_rational, to_f64, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameter mismatch: expected {expected:?}")]
    ParameterMismatch { expected: Vec<String> },
    #[error("domain constraint violated: {0}")]
    DomainViolation(String),
    #[error("family `{0}` has no closed-form black area")]
    NoClosedForm(String),
    #[error("no formula piece matches the given parameters")]
    NoMatchingPiece,
    #[error("unknown locus case `{0}`")]
    UnknownCase(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Exact parameter assignment for one family, in the family's declared
/// parameter order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    names: &'static [&'static str],
    values: Vec<Rational>,
}

impl ParamPoint {
    pub fn new(family: &FamilySpec, values: Vec<Rational>) -> Result<Self, FamilyError> {
        if values.len() != family.parameters.len() {
            return Err(FamilyError::ParameterMismatch {
                expected: family.parameters.iter().map(|s| s.to_string()).collect(),
            });
        }
        Ok(ParamPoint { names: family.parameters, values })
    }

    /// Builds from `(name, value)` pairs; every declared parameter must be
    /// assigned exactly once.
    pub fn from_pairs(
        family: &FamilySpec,
        pairs: &[(String, Rational)],
    ) -> Result<Self, FamilyError> {
        let mismatch = || FamilyError::ParameterMismatch {
            expected: family.parameters.iter().map(|s| s.to_string()).collect(),
        };
        if pairs.len() != family.parameters.len() {
            return Err(mismatch());
        }
        let mut values = Vec::with_capacity(family.parameters.len());
        for name in family.parameters {
            let (_, v) = pairs
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(mismatch)?;
            values.push(v.clone());
        }
        Ok(ParamPoint { names: family.parameters, values })
    }

    pub fn from_f64(family: &FamilySpec, x: &[f64]) -> Result<Self, FamilyError> {
        let values = x
            .iter()
            .map(|&v| crate::rational::snap_f64(v, 1e-12))
            .collect();
        ParamPoint::new(family, values)
    }

    pub fn names(&self) -> &'static [&'static str] {
        self.names
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> &Rational {
        &self.values[idx]
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.names
            .iter()
            .position(|n| *n == name)
            .map(|i| &self.values[i])
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.values.iter().map(to_f64).collect()
    }

    pub fn to_string_map(&self) -> BTreeMap<String, String> {
        self.names
            .iter()
            .zip(&self.values)
            .map(|(n, v)| (n.to_string(), format_rational(v)))
            .collect()
    }
}

/// Affine inequality `constant + coeffs . params >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub label: &'static str,
    pub constant: Rational,
    pub coeffs: Vec<Rational>,
}

impl LinearConstraint {
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut acc = self.constant.clone();
        for (c, v) in self.coeffs.iter().zip(values) {
            if !c.is_zero() {
                acc += c * v;
            }
        }
        acc
    }

    pub fn satisfied(&self, values: &[Rational]) -> bool {
        self.eval(values) >= Rational::zero()
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut acc = to_f64(&self.constant);
        for (c, v) in self.coeffs.iter().zip(x) {
            acc += to_f64(c) * v;
        }
        acc
    }
}

/// One guard-selected piece of a piecewise closed-form black area.
pub struct BlackPiece {
    pub id: &'static str,
    pub guards: Vec<LinearConstraint>,
    pub eval: fn(&ParamPoint) -> Rational,
    pub eval_f64: fn(&[f64]) -> f64,
}

/// A published formula the engine refutes; kept verbatim so the
/// discrepancy itself can be asserted.
pub struct PrintedFormula {
    pub note: &'static str,
    pub eval: fn(&ParamPoint) -> Rational,
}

/// A claimed optimum for the constants table.
#[derive(Debug, Clone)]
pub struct ClaimedOptimum {
    pub params: Vec<f64>,
    pub area: Option<f64>,
    pub area_exact: Option<Rational>,
    pub area_label: &'static str,
    pub status: &'static str,
    /// The printed, suspect `s` for the square-plus-triangle family.
    pub printed_s: Option<f64>,
}

/// A registered configuration family.
pub struct FamilySpec {
    pub name: &'static str,
    pub parameters: &'static [&'static str],
    pub domain: Vec<LinearConstraint>,
    /// Extra constraints under which the closed black form is engine-exact.
    pub regime: Vec<LinearConstraint>,
    pub builder: fn(&ParamPoint) -> Result<Region, GeometryError>,
    pub closed_white: fn(&ParamPoint) -> Rational,
    pub closed_white_f64: fn(&[f64]) -> f64,
    /// Empty for optimizer-only families.
    pub black_pieces: Vec<BlackPiece>,
    pub printed_black: Option<PrintedFormula>,
    pub erratum: Option<&'static str>,
    pub claimed: Option<ClaimedOptimum>,
    /// Strictly feasible point, used to seed feasible-region samplers.
    pub interior_point: Option<Vec<f64>>,
}

/// Closed-form black area evaluation result.
#[derive(Debug, Clone)]
pub struct ClosedBlack {
    pub value: Rational,
    pub piece: &'static str,
    pub in_regime: bool,
}

impl FamilySpec {
    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|n| *n == name)
    }

    /// Errors with the first violated inequality, by label.
    pub fn check_domain(&self, p: &ParamPoint) -> Result<(), FamilyError> {
        for c in &self.domain {
            if !c.satisfied(p.values()) {
                return Err(FamilyError::DomainViolation(c.label.to_string()));
            }
        }
        Ok(())
    }

    pub fn domain_satisfied_f64(&self, x: &[f64], tol: f64) -> bool {
        self.domain.iter().all(|c| c.eval_f64(x) >= -tol)
    }

    pub fn in_regime(&self, p: &ParamPoint) -> bool {
        self.domain.iter().all(|c| c.satisfied(p.values()))
            && self.regime.iter().all(|c| c.satisfied(p.values()))
    }

    pub fn in_regime_f64(&self, x: &[f64], tol: f64) -> bool {
        self.domain_satisfied_f64(x, tol) && self.regime.iter().all(|c| c.eval_f64(x) >= -tol)
    }

    /// White region for an in-domain parameter point.
    pub fn build_white(&self, p: &ParamPoint) -> Result<Region, FamilyError> {
        self.check_domain(p)?;
        Ok((self.builder)(p)?)
    }

    pub fn closed_white_area(&self, p: &ParamPoint) -> Rational {
        (self.closed_white)(p)
    }

    pub fn has_closed_black(&self) -> bool {
        !self.black_pieces.is_empty()
    }

    /// Evaluates the guard-selected closed-form piece. The value is always
    /// returned; `in_regime = false` warns that the engine is the only
    /// ground truth at this point.
    pub fn closed_black_area(&self, p: &ParamPoint) -> Result<ClosedBlack, FamilyError> {
        if self.black_pieces.is_empty() {
            return Err(FamilyError::NoClosedForm(self.name.to_string()));
        }
        self.check_domain(p)?;
        for piece in &self.black_pieces {
            if piece.guards.iter().all(|g| g.satisfied(p.values())) {
                return Ok(ClosedBlack {
                    value: (piece.eval)(p),
                    piece: piece.id,
                    in_regime: self.in_regime(p),
                });
            }
        }
        Err(FamilyError::NoMatchingPiece)
    }

    /// Float closed-form black area (first piece whose guards pass at a
    /// small tolerance). `None` when no piece matches or no closed form.
    pub fn closed_black_f64(&self, x: &[f64]) -> Option<(f64, &'static str)> {
        self.black_pieces
            .iter()
            .find(|piece| piece.guards.iter().all(|g| g.eval_f64(x) >= -1e-12))
            .map(|piece| ((piece.eval_f64)(x), piece.id))
    }

    /// Exact engine areas `(white, black)` via strip subtraction.
    pub fn engine_areas(&self, p: &ParamPoint) -> Result<(Rational, Rational), FamilyError> {
        let white = self.build_white(p)?;
        let black = black_region(&white)?;
        Ok((white.area(), black.area()))
    }

    /// Exact cyclic projection of a nearly feasible rational point onto the
    /// domain polytope. Violations are expected to be tiny (float noise);
    /// returns `None` if they are not.
    pub fn repair_exact(&self, mut values: Vec<Rational>) -> Option<ParamPoint> {
        for _ in 0..16 {
            let mut clean = true;
            for c in &self.domain {
                let slack = c.eval(&values);
                if slack < Rational::zero() {
                    clean = false;
                    let norm2: Rational = c.coeffs.iter().map(|v| v * v).sum();
                    if norm2.is_zero() {
                        return None;
                    }
                    let step = -&slack / &norm2;
                    for (vi, ci) in values.iter_mut().zip(&c.coeffs) {
                        if !ci.is_zero() {
                            *vi += &step * ci;
                        }
                    }
                }
            }
            if clean {
                let p = ParamPoint { names: self.parameters, values };
                return Some(p);
            }
        }
        None
    }

    /// Cyclic projection onto the domain polytope (floats). Returns false
    /// when the iteration fails to reach approximate feasibility.
    pub fn project_into_domain_f64(&self, x: &mut [f64]) -> bool {
        for _ in 0..32 {
            let mut worst = 0.0f64;
            for c in &self.domain {
                let slack = c.eval_f64(x);
                if slack < -1e-15 {
                    let norm2: f64 = c.coeffs.iter().map(|v| to_f64(v) * to_f64(v)).sum();
                    if norm2 == 0.0 {
                        return false;
                    }
                    let step = -slack / norm2;
                    for (xi, ci) in x.iter_mut().zip(&c.coeffs) {
                        *xi += step * to_f64(ci);
                    }
                    worst = worst.min(slack);
                }
            }
            if worst >= -1e-15 {
                return true;
            }
        }
        self.domain_satisfied_f64(x, 1e-9)
    }
}

/// All eleven configuration families, in registration order.
pub fn registry() -> &'static [FamilySpec] {
    static REGISTRY: OnceLock<Vec<FamilySpec>> = OnceLock::new();
    REGISTRY.get_or_init(defs::build_registry)
}

pub fn find(name: &str) -> Result<&'static FamilySpec, FamilyError> {
    registry()
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| FamilyError::UnknownFamily(name.to_string()))
}

/// Exact value paired with its float rendering, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub value: f64,
}

impl ExactValue {
    pub fn of(r: &Rational) -> Self {
        ExactValue { exact: format_rational(r), value: to_f64(r) }
    }
}

/// Audit record comparing engine areas with the closed forms at one point.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub engine_white: ExactValue,
    pub engine_black: ExactValue,
    pub closed_white: ExactValue,
    pub closed_black: Option<ExactValue>,
    pub piece: Option<String>,
    pub printed_black: Option<ExactValue>,
    /// |engine - closed| discrepancies, exact.
    pub white_discrepancy: ExactValue,
    pub black_discrepancy: Option<ExactValue>,
    /// engine_white - engine_black, the equal-area defect.
    pub equal_area_gap: ExactValue,
    pub in_regime: bool,
    pub erratum: Option<String>,
}

/// Engine-vs-closed-form audit at a single parameter point.
pub fn verify_family(family: &FamilySpec, p: &ParamPoint) -> Result<FamilyReport, FamilyError> {
    let (engine_white, engine_black) = family.engine_areas(p)?;
    let closed_white = family.closed_white_area(p);
    let closed = if family.has_closed_black() {
        Some(family.closed_black_area(p)?)
    } else {
        None
    };
    let white_disc = (&engine_white - &closed_white).abs();
    let black_disc = closed.as_ref().map(|c| (&engine_black - &c.value).abs());
    let gap = &engine_white - &engine_black;
    Ok(FamilyReport {
        family: family.name.to_string(),
        params: p.to_string_map(),
        engine_white: ExactValue::of(&engine_white),
        engine_black: ExactValue::of(&engine_black),
        closed_white: ExactValue::of(&closed_white),
        closed_black: closed.as_ref().map(|c| ExactValue::of(&c.value)),
        piece: closed.as_ref().map(|c| c.piece.to_string()),
        printed_black: family
            .printed_black
            .as_ref()
            .map(|pf| ExactValue::of(&(pf.eval)(p))),
        white_discrepancy: ExactValue::of(&white_disc),
        black_discrepancy: black_disc.as_ref().map(ExactValue::of),
        equal_area_gap: ExactValue::of(&gap),
        in_regime: closed.map_or_else(|| family.in_regime(p), |c| c.in_regime),
        erratum: family.erratum.map(|s| s.to_string()),
    })
}

/// Registry metadata as JSON, for CLI introspection.
pub fn registry_json() -> serde_json::Value {
    let families: Vec<serde_json::Value> = registry()
        .iter()
        .map(|f| {
            serde_json::json!({
                "name": f.name,
                "parameters": f.parameters,
                "domain": constraints_json(&f.domain),
                "regime": constraints_json(&f.regime),
                "closed_black_pieces": f.black_pieces.iter().map(|p| p.id).collect::<Vec<_>>(),
                "optimizer_only": f.black_pieces.is_empty(),
                "erratum": f.erratum,
            })
        })
        .collect();
    serde_json::json!({ "families": families })
}

fn constraints_json(cs: &[LinearConstraint]) -> serde_json::Value {
    serde_json::Value::Array(
        cs.iter()
            .map(|c| {
                serde_json::json!({
                    "label": c.label,
                    "constant": format_rational(&c.constant),
                    "coeffs": c.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}
