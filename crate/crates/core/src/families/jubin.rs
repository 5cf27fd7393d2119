//! The seven-parameter two-pentagon family (Jubin's construction
//! generalized).
//!
//! White cells:
//! ```text
//!   P1 = [(0,0), (a,a), (a,a+b-e), (a-e,a+b-e), (0,b)]
//!   P2 = [(g,0), (g+c,0), (g+c,c-2f+d), (g+c-f,c-f+d), (g,d)]
//! ```
//! Inside the feasibility polytope below, the non-attacking region is
//! exactly the two predicted pentagons
//! ```text
//!   B1 = [(g,1), (a,1), (a,g+2c-2f+d-a),
//!         ((g+d-b)/2+c-f, (g+d+b)/2+c-f), (g,g+b)]
//!   B2 = [(1,1), (g+c,g+c), (g+c,a+b-e), (a+b-e+g-d,a+b-e), (1,1+d-g)]
//! ```
//! and both area polynomials hold identically.
//!
//! The polytope spells out the conditions under which every strip shadow
//! lands where the pentagon vertex lists assume: pentagon shape validity,
//! ordering of the two components, merged x+y shadows, and the four "no
//! extra pocket" inequalities (no free band below the main diagonal left of
//! `g`, none above `y = x + b` right of `g+c`, and so on). They were
//! derived by tracing each free band of the strip arrangement and are
//! validated against the engine on random interior samples.

use super::defs::{cell, con, region_of};
use super::{BlackPiece, ClaimedOptimum, FamilySpec, FamilyError, LinearConstraint, ParamPoint};
use crate::geometry::{ConvexPolygon, GeometryError, Point, Region};
use crate::rational::{rat, Rational};
use num_traits::{One, Zero};

const N: usize = 7;
const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const E: usize = 4;
const F: usize = 5;
const G: usize = 6;

fn ri(n: i64) -> Rational {
    rat(n, 1)
}

/// The known optimum (a,b,c,d,e,f,g) = (1/4, 1/3, 1/4, 1/6, 1/12, 1/12, 1/2).
pub fn optimum_values() -> Vec<Rational> {
    vec![
        rat(1, 4),
        rat(1, 3),
        rat(1, 4),
        rat(1, 6),
        rat(1, 12),
        rat(1, 12),
        rat(1, 2),
    ]
}

pub fn optimum_point() -> ParamPoint {
    ParamPoint::new(spec_ref(), optimum_values()).expect("seven values")
}

fn spec_ref() -> &'static FamilySpec {
    super::find("jubin").expect("jubin is registered")
}

fn white_builder(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, b, c, d, e, f, g) = params(p);
    let z = Rational::zero();
    let p1 = cell(vec![
        (z.clone(), z.clone()),
        (a.clone(), a.clone()),
        (a.clone(), a + b - e),
        (a - e, a + b - e),
        (z.clone(), b.clone()),
    ])?;
    let p2 = cell(vec![
        (g.clone(), z.clone()),
        (g + c, z),
        (g + c, c - f - f + d),
        (g + c - f, c - f + d),
        (g.clone(), d.clone()),
    ])?;
    region_of(vec![p1, p2])
}

fn params(p: &ParamPoint) -> (&Rational, &Rational, &Rational, &Rational, &Rational, &Rational, &Rational) {
    (
        p.value(A),
        p.value(B),
        p.value(C),
        p.value(D),
        p.value(E),
        p.value(F),
        p.value(G),
    )
}

/// White area: ab - e^2/2 + cd + c^2/2 - f^2.
fn white_area(p: &ParamPoint) -> Rational {
    let (a, b, c, d, e, f, _) = params(p);
    a * b - e * e / ri(2) + c * d + c * c / ri(2) - f * f
}

fn white_area_f64(x: &[f64]) -> f64 {
    let (a, b, c, d, e, f) = (x[A], x[B], x[C], x[D], x[E], x[F]);
    a * b - e * e / 2.0 + c * d + c * c / 2.0 - f * f
}

/// Black area polynomial (single piece, valid on the whole polytope).
fn black_area(p: &ParamPoint) -> Rational {
    let (a, b, c, d, e, f, g) = params(p);
    -a - rat(3, 4) * d * d + ri(2) * g - d - c * d - a * b - f * f
        - e * e / ri(2)
        - rat(3, 2) * c * c
        + ri(2) * b * c
        - ri(2) * a * f
        + ri(3) * a * c
        + ri(2) * a * d
        + ri(2) * c * f
        - e * c
        - e * d
        + b * e
        + a * e
        - b * f
        + f * d
        + rat(3, 2) * b * d
        - a * a
        - rat(3, 4) * b * b
        - ri(2) * g * c
        + g * d / ri(2)
        - g * b / ri(2)
        + a * g
        + g * f
        - rat(7, 4) * g * g
}

fn black_area_f64(x: &[f64]) -> f64 {
    let (a, b, c, d, e, f, g) = (x[A], x[B], x[C], x[D], x[E], x[F], x[G]);
    -a - 0.75 * d * d + 2.0 * g - d - c * d - a * b - f * f - 0.5 * e * e - 1.5 * c * c
        + 2.0 * b * c
        - 2.0 * a * f
        + 3.0 * a * c
        + 2.0 * a * d
        + 2.0 * c * f
        - e * c
        - e * d
        + b * e
        + a * e
        - b * f
        + f * d
        + 1.5 * b * d
        - a * a
        - 0.75 * b * b
        - 2.0 * g * c
        + 0.5 * g * d
        - 0.5 * g * b
        + a * g
        + g * f
        - 1.75 * g * g
}

fn domain() -> Vec<LinearConstraint> {
    let mut cs = Vec::new();
    for (idx, name) in [
        (A, "a >= 0"),
        (B, "b >= 0"),
        (C, "c >= 0"),
        (D, "d >= 0"),
        (E, "e >= 0"),
        (F, "f >= 0"),
        (G, "g >= 0"),
    ] {
        cs.push(con(name, N, ri(0), &[(idx, ri(1))]));
    }
    // Pentagon shape validity.
    cs.push(con("e <= a", N, ri(0), &[(A, ri(1)), (E, ri(-1))]));
    cs.push(con("e <= b", N, ri(0), &[(B, ri(1)), (E, ri(-1))]));
    cs.push(con("f <= c", N, ri(0), &[(C, ri(1)), (F, ri(-1))]));
    cs.push(con("c+d >= 2f", N, ri(0), &[(C, ri(1)), (D, ri(1)), (F, ri(-2))]));
    // Component ordering and containment.
    cs.push(con("a <= g", N, ri(0), &[(G, ri(1)), (A, ri(-1))]));
    cs.push(con("g+c <= 1", N, ri(1), &[(G, ri(-1)), (C, ri(-1))]));
    cs.push(con("d <= g", N, ri(0), &[(G, ri(1)), (D, ri(-1))]));
    cs.push(con("g+b <= 1", N, ri(1), &[(G, ri(-1)), (B, ri(-1))]));
    // Black stays two pentagons with the predicted vertex lists.
    cs.push(con(
        "a+b-e >= c+d",
        N,
        ri(0),
        &[(A, ri(1)), (B, ri(1)), (E, ri(-1)), (C, ri(-1)), (D, ri(-1))],
    ));
    cs.push(con(
        "a+b-e <= g+c",
        N,
        ri(0),
        &[(G, ri(1)), (C, ri(1)), (A, ri(-1)), (B, ri(-1)), (E, ri(1))],
    ));
    cs.push(con(
        "a+b-e+g-d <= 1",
        N,
        ri(1),
        &[(A, ri(-1)), (B, ri(-1)), (E, ri(1)), (G, ri(-1)), (D, ri(1))],
    ));
    cs.push(con(
        "g <= 2c-2f+d",
        N,
        ri(0),
        &[(C, ri(2)), (F, ri(-2)), (D, ri(1)), (G, ri(-1))],
    ));
    cs.push(con(
        "g <= 2a+b-e",
        N,
        ri(0),
        &[(A, ri(2)), (B, ri(1)), (E, ri(-1)), (G, ri(-1))],
    ));
    cs.push(con(
        "g+2c-2f+d <= 1+a",
        N,
        ri(1),
        &[(A, ri(1)), (G, ri(-1)), (C, ri(-2)), (F, ri(2)), (D, ri(-1))],
    ));
    cs.push(con(
        "g+2c-2f+d >= 2a+b",
        N,
        ri(0),
        &[(G, ri(1)), (C, ri(2)), (F, ri(-2)), (D, ri(1)), (A, ri(-2)), (B, ri(-1))],
    ));
    cs.push(con(
        "2c+d <= b+2f+g",
        N,
        ri(0),
        &[(B, ri(1)), (F, ri(2)), (G, ri(1)), (C, ri(-2)), (D, ri(-1))],
    ));
    cs.push(con(
        "g+b+c >= 1",
        N,
        ri(-1),
        &[(G, ri(1)), (B, ri(1)), (C, ri(1))],
    ));
    cs
}

pub(super) fn spec() -> FamilySpec {
    FamilySpec {
        name: "jubin",
        parameters: &["a", "b", "c", "d", "e", "f", "g"],
        domain: domain(),
        regime: vec![],
        builder: white_builder,
        closed_white: white_area,
        closed_white_f64: white_area_f64,
        black_pieces: vec![BlackPiece {
            id: "two-pentagons",
            guards: vec![],
            eval: black_area,
            eval_f64: black_area_f64,
        }],
        printed_black: None,
        erratum: None,
        claimed: Some(ClaimedOptimum {
            params: vec![
                0.25,
                1.0 / 3.0,
                0.25,
                1.0 / 6.0,
                1.0 / 12.0,
                1.0 / 12.0,
                0.5,
            ],
            area: Some(7.0 / 48.0),
            area_exact: Some(rat(7, 48)),
            area_label: "7/48",
            status: "exact",
            printed_s: None,
        }),
        interior_point: Some(vec![0.25, 0.33, 0.26, 0.16, 0.08, 0.07, 0.49]),
    }
}

/// A pentagon loop that comes out inverted (clockwise-convex) has collapsed
/// through itself on a polytope facet; the true cell is empty there.
fn pentagon_or_empty(
    points: Vec<(Rational, Rational)>,
) -> Result<Option<ConvexPolygon>, GeometryError> {
    let pts: Vec<Point> = points.into_iter().map(|(x, y)| Point::new(x, y)).collect();
    match ConvexPolygon::try_from_loop(pts.clone()) {
        Ok(opt) => Ok(opt),
        Err(GeometryError::NotConvexCcw) => {
            let mut rev = pts;
            rev.reverse();
            match ConvexPolygon::try_from_loop(rev) {
                Ok(_) => Ok(None),
                Err(e) => Err(e),
            }
        }
        Err(e) => Err(e),
    }
}

/// The two black pentagons predicted by the vertex formulas.
pub fn predicted_black_pentagons(p: &ParamPoint) -> Result<Region, FamilyError> {
    let family = spec_ref();
    family.check_domain(p)?;
    let (a, b, c, d, e, f, g) = params(p);
    let one = Rational::one();
    let two = ri(2);

    let y3 = g + &two * c - &two * f + d - a;
    let x4 = (g + d - b) / &two + c - f;
    let y4 = (g + d + b) / &two + c - f;
    let b1 = pentagon_or_empty(vec![
        (g.clone(), one.clone()),
        (a.clone(), one.clone()),
        (a.clone(), y3),
        (x4, y4),
        (g.clone(), g + b),
    ])?;

    let ab_e = a + b - e;
    let b2 = pentagon_or_empty(vec![
        (one.clone(), one.clone()),
        (g + c, g + c),
        (g + c, ab_e.clone()),
        (&ab_e + g - d, ab_e),
        (one.clone(), &one + d - g),
    ])?;

    Ok(Region::new(vec![b1, b2].into_iter().flatten().collect())?)
}

/// Exact feasible samples over the pentagon polytope (the closed black
/// form is valid on all of it, so domain and regime coincide here).
pub fn sample_feasible(count: usize, seed: u64) -> Vec<ParamPoint> {
    super::sampling::sample_domain(spec_ref(), count, seed)
}
