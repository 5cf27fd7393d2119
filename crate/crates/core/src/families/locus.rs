//! Equal-area solution loci.
//!
//! Each case is a printed curve `s(a)` on which the white and black areas
//! coincide. The checker samples the curve, snaps the floats to rationals,
//! and verifies through the *engine* (not the closed forms) that
//! `|white - black| <= 1e-8` at every sample.
//!
//! Each case records both the printed parameter interval and the effective
//! one: the sub-interval on which the sampled point also satisfies the
//! family's regime (where the sampled case's piece is the one the curve was
//! solved against). Outside the effective interval the curve genuinely
//! fails the engine because the formula it was derived from stops holding.

use super::{find, FamilyError, ParamPoint};
use crate::rational::{snap_f64, to_f64, Rational};
use num_traits::Signed;
use serde::Serialize;

pub const LOCUS_GAP_TOLERANCE: f64 = 1e-8;

enum CaseKind {
    /// Engine check along s = s(a).
    Curve(fn(f64) -> f64),
    /// Exact closed-form identity white + black = total for all samples.
    Identity { total: Rational },
}

pub struct LocusCase {
    pub family: &'static str,
    pub id: &'static str,
    pub description: &'static str,
    pub printed_lo: f64,
    pub printed_hi: f64,
    pub effective_lo: f64,
    pub effective_hi: f64,
    kind: CaseKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocusSample {
    pub a: f64,
    pub s: Option<f64>,
    pub white: f64,
    pub black: f64,
    pub gap: f64,
    pub in_regime: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocusReport {
    pub family: String,
    pub case: String,
    pub description: String,
    pub printed_interval: [f64; 2],
    pub effective_interval: [f64; 2],
    pub samples: Vec<LocusSample>,
    pub pass_count: usize,
    pub passed: bool,
}

fn sqrt0(x: f64) -> f64 {
    // Discriminants vanish at branch endpoints; clamp float noise.
    x.max(0.0).sqrt()
}

pub fn cases() -> &'static [LocusCase] {
    use std::sync::OnceLock;
    static CASES: OnceLock<Vec<LocusCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        let sqrt2 = 2f64.sqrt();
        let sqrt3 = 3f64.sqrt();
        let sqrt5 = 5f64.sqrt();
        let sqrt7 = 7f64.sqrt();
        let sqrt6 = 6f64.sqrt();
        let sqrt22 = 22f64.sqrt();
        let sqrt42 = 42f64.sqrt();
        let sqrt217 = 217f64.sqrt();
        vec![
            // two_squares, case s >= 2a, s >= 1-2a.
            LocusCase {
                family: "two_squares",
                id: "upper-plus",
                description: "s >= 2a, s >= 1-2a; s = (4+a)/7 + (2/7)sqrt(4-19a+9a^2)",
                printed_lo: (sqrt2 - 1.0) / 2.0,
                printed_hi: (19.0 - sqrt217) / 18.0,
                // The + branch leaves s <= 3a only from a = 3/13 on.
                effective_lo: 3.0 / 13.0,
                effective_hi: (19.0 - sqrt217) / 18.0,
                kind: CaseKind::Curve(|a| {
                    (4.0 + a) / 7.0 + 2.0 / 7.0 * sqrt0(4.0 - 19.0 * a + 9.0 * a * a)
                }),
            },
            LocusCase {
                family: "two_squares",
                id: "upper-minus",
                description: "s >= 2a, s >= 1-2a; s = (4+a)/7 - (2/7)sqrt(4-19a+9a^2)",
                printed_lo: (1.0 + 2.0 * sqrt7) / 27.0,
                printed_hi: (19.0 - sqrt217) / 18.0,
                effective_lo: (1.0 + 2.0 * sqrt7) / 27.0,
                effective_hi: (19.0 - sqrt217) / 18.0,
                kind: CaseKind::Curve(|a| {
                    (4.0 + a) / 7.0 - 2.0 / 7.0 * sqrt0(4.0 - 19.0 * a + 9.0 * a * a)
                }),
            },
            // two_squares, case s <= 2a, s <= 1-2a.
            LocusCase {
                family: "two_squares",
                id: "low-low",
                description: "s <= 2a, s <= 1-2a; s = 2 - 7a - 2sqrt(9a^2-2a)",
                printed_lo: 2.0 / 9.0,
                printed_hi: (3.0 - sqrt2) / 7.0,
                effective_lo: 2.0 / 9.0,
                effective_hi: (3.0 - sqrt2) / 7.0,
                kind: CaseKind::Curve(|a| 2.0 - 7.0 * a - 2.0 * sqrt0(9.0 * a * a - 2.0 * a)),
            },
            // two_squares, case s >= 2a, s <= 1-2a.
            LocusCase {
                family: "two_squares",
                id: "mid-low",
                description: "s >= 2a, s <= 1-2a; s = 3a - (2/sqrt(3))sqrt(1-7a+12a^2)",
                printed_lo: 2.0 / 9.0,
                printed_hi: (1.0 + 2.0 * sqrt7) / 27.0,
                effective_lo: 2.0 / 9.0,
                effective_hi: (1.0 + 2.0 * sqrt7) / 27.0,
                kind: CaseKind::Curve(|a| {
                    3.0 * a - 2.0 / 3f64.sqrt() * sqrt0(1.0 - 7.0 * a + 12.0 * a * a)
                }),
            },
            // two_triangles_same, case s >= 1-2a.
            LocusCase {
                family: "two_triangles_same",
                id: "upper-plus",
                description: "s >= 1-2a; s = 1/2 + (1/2)sqrt(3-12a+8a^2)",
                printed_lo: (2.0 - sqrt2) / 2.0,
                printed_hi: (3.0 - sqrt3) / 4.0,
                // In-regime (s_+ <= 3a) on the whole printed interval.
                effective_lo: (2.0 - sqrt2) / 2.0,
                effective_hi: (3.0 - sqrt3) / 4.0,
                kind: CaseKind::Curve(|a| {
                    0.5 + 0.5 * sqrt0(3.0 - 12.0 * a + 8.0 * a * a)
                }),
            },
            LocusCase {
                family: "two_triangles_same",
                id: "upper-minus",
                description: "s >= 1-2a; s = 1/2 - (1/2)sqrt(3-12a+8a^2)",
                printed_lo: (sqrt5 - 1.0) / 4.0,
                printed_hi: (3.0 - sqrt3) / 4.0,
                effective_lo: (sqrt5 - 1.0) / 4.0,
                effective_hi: (3.0 - sqrt3) / 4.0,
                kind: CaseKind::Curve(|a| {
                    0.5 - 0.5 * sqrt0(3.0 - 12.0 * a + 8.0 * a * a)
                }),
            },
            // two_triangles_same, case s <= 1-2a.
            LocusCase {
                family: "two_triangles_same",
                id: "low",
                description: "s <= 1-2a; s = 2a - sqrt(2-10a+12a^2)",
                printed_lo: (5.0 - sqrt3) / 11.0,
                printed_hi: (sqrt5 - 1.0) / 4.0,
                effective_lo: (5.0 - sqrt3) / 11.0,
                effective_hi: (sqrt5 - 1.0) / 4.0,
                kind: CaseKind::Curve(|a| {
                    2.0 * a - sqrt0(2.0 - 10.0 * a + 12.0 * a * a)
                }),
            },
            // two_triangles_opposite: white + black = 1/4 identically.
            LocusCase {
                family: "two_triangles_opposite",
                id: "identity",
                description: "closed white + closed black = 1/4 for all a in (0, 1/2)",
                printed_lo: 0.0,
                printed_hi: 0.5,
                effective_lo: 0.0,
                effective_hi: 0.5,
                kind: CaseKind::Identity { total: crate::rational::rat(1, 4) },
            },
            // square_plus_triangle, case s >= 1-2a (corrected formula).
            LocusCase {
                family: "square_plus_triangle",
                id: "upper-plus",
                description: "s >= 1-2a; s = (4-a)/7 + (1/7)sqrt(16-64a+22a^2)",
                printed_lo: (sqrt6 - 2.0) / 2.0,
                printed_hi: (1.0 + sqrt22) / 21.0,
                // s_+ <= 3a (the regime) holds exactly from a = 8/33.
                effective_lo: 8.0 / 33.0,
                effective_hi: (1.0 + sqrt22) / 21.0,
                kind: CaseKind::Curve(|a| {
                    (4.0 - a) / 7.0 + sqrt0(16.0 - 64.0 * a + 22.0 * a * a) / 7.0
                }),
            },
            LocusCase {
                family: "square_plus_triangle",
                id: "upper-minus",
                description: "s >= 1-2a; s = (4-a)/7 - (1/7)sqrt(16-64a+22a^2)",
                printed_lo: (1.0 + sqrt22) / 21.0,
                printed_hi: 2.0 * (8.0 - sqrt42) / 11.0,
                effective_lo: (1.0 + sqrt22) / 21.0,
                effective_hi: 2.0 * (8.0 - sqrt42) / 11.0,
                kind: CaseKind::Curve(|a| {
                    (4.0 - a) / 7.0 - sqrt0(16.0 - 64.0 * a + 22.0 * a * a) / 7.0
                }),
            },
            // square_plus_triangle, case s <= 1-2a.
            LocusCase {
                family: "square_plus_triangle",
                id: "low",
                description: "s <= 1-2a; s = 7a/3 - (1/3)sqrt(12-72a+106a^2)",
                printed_lo: (6.0 - sqrt6) / 15.0,
                printed_hi: (1.0 + sqrt22) / 21.0,
                effective_lo: (6.0 - sqrt6) / 15.0,
                effective_hi: (1.0 + sqrt22) / 21.0,
                kind: CaseKind::Curve(|a| {
                    7.0 * a / 3.0 - sqrt0(12.0 - 72.0 * a + 106.0 * a * a) / 3.0
                }),
            },
        ]
    })
}

pub fn case_ids(family: &str) -> Vec<&'static str> {
    cases()
        .iter()
        .filter(|c| c.family == family)
        .map(|c| c.id)
        .collect()
}

/// Samples one locus branch and verifies equal areas through the engine.
pub fn solution_locus_check(
    family_name: &str,
    case_id: &str,
    samples: usize,
) -> Result<LocusReport, FamilyError> {
    assert!(samples >= 1);
    let case = cases()
        .iter()
        .find(|c| c.family == family_name && c.id == case_id)
        .ok_or_else(|| FamilyError::UnknownCase(format!("{family_name}/{case_id}")))?;
    let family = find(case.family)?;

    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = (i as f64 + 0.5) / samples as f64;
        let a = case.effective_lo + t * (case.effective_hi - case.effective_lo);
        let sample = match &case.kind {
            CaseKind::Curve(s_of_a) => {
                let a_rat = snap_f64(a, 1e-12);
                let s = s_of_a(to_f64(&a_rat));
                let s_rat = snap_f64(s, 1e-12);
                let p = ParamPoint::new(family, vec![a_rat, s_rat])?;
                family.check_domain(&p)?;
                let (white, black) = family.engine_areas(&p)?;
                let gap = to_f64(&(&white - &black).abs());
                let in_regime = family.in_regime(&p);
                LocusSample {
                    a: to_f64(p.value(0)),
                    s: Some(to_f64(p.value(1))),
                    white: to_f64(&white),
                    black: to_f64(&black),
                    gap,
                    in_regime,
                    pass: in_regime && gap <= LOCUS_GAP_TOLERANCE,
                }
            }
            CaseKind::Identity { total } => {
                // Exact rational samples across (0, 1/2).
                let a_rat = Rational::new(
                    (i as i64 + 1).into(),
                    (2 * (samples as i64 + 1)).into(),
                );
                let p = ParamPoint::new(family, vec![a_rat.clone()])?;
                let white = family.closed_white_area(&p);
                let black = family.closed_black_area(&p)?.value;
                let pass = &white + &black == *total;
                LocusSample {
                    a: to_f64(&a_rat),
                    s: None,
                    white: to_f64(&white),
                    black: to_f64(&black),
                    gap: to_f64(&((&white + &black) - total).abs()),
                    in_regime: family.in_regime(&p),
                    pass,
                }
            }
        };
        out.push(sample);
    }

    let pass_count = out.iter().filter(|s| s.pass).count();
    Ok(LocusReport {
        family: case.family.to_string(),
        case: case.id.to_string(),
        description: case.description.to_string(),
        printed_interval: [case.printed_lo, case.printed_hi],
        effective_interval: [case.effective_lo, case.effective_hi],
        passed: pass_count == out.len(),
        pass_count,
        samples: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{find, verify_family};
    use crate::rational::rat;

    // Locus endpoint a = 2/9 on the mid-low branch lands exactly on
    // s = 4/9 with white = black = 8/81.
    #[test]
    fn two_squares_mid_low_endpoint_exact() {
        let family = find("two_squares").unwrap();
        let p = ParamPoint::new(family, vec![rat(2, 9), rat(4, 9)]).unwrap();
        let report = verify_family(family, &p).unwrap();
        assert_eq!(report.engine_white.exact, "8/81");
        assert_eq!(report.engine_black.exact, "8/81");
        assert_eq!(report.equal_area_gap.exact, "0");
        assert_eq!(report.white_discrepancy.exact, "0");
        assert_eq!(report.black_discrepancy.unwrap().exact, "0");
    }

    // Optimum of two_triangles_same: a = (3-sqrt(3))/4, s = 1/2.
    #[test]
    fn two_triangles_same_endpoint_within_tolerance() {
        let family = find("two_triangles_same").unwrap();
        let a = snap_f64((3.0 - 3f64.sqrt()) / 4.0, 1e-12);
        let p = ParamPoint::new(family, vec![a, rat(1, 2)]).unwrap();
        let (white, black) = family.engine_areas(&p).unwrap();
        let gap = to_f64(&(&white - &black).abs());
        assert!(gap <= LOCUS_GAP_TOLERANCE, "gap {gap}");
    }

    #[test]
    fn opposite_identity_holds_everywhere() {
        let report = solution_locus_check("two_triangles_opposite", "identity", 25).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn every_branch_samples_pass() {
        for case in cases() {
            let report = solution_locus_check(case.family, case.id, 8).unwrap();
            assert!(
                report.passed,
                "{}/{}: {:?}",
                case.family,
                case.id,
                report
                    .samples
                    .iter()
                    .filter(|s| !s.pass)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn unknown_case_errors() {
        assert!(matches!(
            solution_locus_check("two_squares", "nope", 5),
            Err(FamilyError::UnknownCase(_))
        ));
    }
}
