//! Registration of the eleven configuration families.
//!
//! Closed black-area formulas are registered with the guard structure that
//! resolves their `max(., 0)` terms, and with the regime constraints under
//! which they were verified (analytically and by engine scan) to match the
//! strip-subtraction engine exactly.

use super::jubin;
use super::{BlackPiece, ClaimedOptimum, FamilySpec, LinearConstraint, ParamPoint, PrintedFormula};
use crate::geometry::{ConvexPolygon, GeometryError, Point, Region};
use crate::rational::{rat, Rational};
use num_traits::{One, Zero};

pub(super) fn con(
    label: &'static str,
    n_params: usize,
    constant: Rational,
    terms: &[(usize, Rational)],
) -> LinearConstraint {
    let mut coeffs = vec![Rational::zero(); n_params];
    for (i, c) in terms {
        coeffs[*i] = c.clone();
    }
    LinearConstraint { label, constant, coeffs }
}

fn ri(n: i64) -> Rational {
    rat(n, 1)
}

pub(super) fn cell(
    points: Vec<(Rational, Rational)>,
) -> Result<Option<ConvexPolygon>, GeometryError> {
    ConvexPolygon::try_from_loop(points.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

pub(super) fn region_of(
    cells: Vec<Option<ConvexPolygon>>,
) -> Result<Region, GeometryError> {
    Region::new(cells.into_iter().flatten().collect())
}

fn corner_square(a: &Rational) -> Result<Option<ConvexPolygon>, GeometryError> {
    let z = Rational::zero();
    cell(vec![
        (z.clone(), z.clone()),
        (a.clone(), z.clone()),
        (a.clone(), a.clone()),
        (z, a.clone()),
    ])
}

fn bottom_square(x0: &Rational, side: &Rational) -> Result<Option<ConvexPolygon>, GeometryError> {
    let z = Rational::zero();
    cell(vec![
        (x0.clone(), z.clone()),
        (x0 + side, z),
        (x0 + side, side.clone()),
        (x0.clone(), side.clone()),
    ])
}

/// Right triangle [(x0,0),(x0+a,0),(x0+a,a)]: hypotenuse of slope +1.
fn bottom_triangle(x0: &Rational, a: &Rational) -> Result<Option<ConvexPolygon>, GeometryError> {
    let z = Rational::zero();
    cell(vec![(x0.clone(), z.clone()), (x0 + a, z), (x0 + a, a.clone())])
}

// ---------------------------------------------------------------------------
// rectangle(a, b): corner rectangle, white ab, black (max(1-a-b,0))^2
// ---------------------------------------------------------------------------

fn rectangle_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, b) = (p.value(0), p.value(1));
    let z = Rational::zero();
    region_of(vec![cell(vec![
        (z.clone(), z.clone()),
        (a.clone(), z.clone()),
        (a.clone(), b.clone()),
        (z, b.clone()),
    ])?])
}

fn rectangle_black_open(p: &ParamPoint) -> Rational {
    let gap = Rational::one() - p.value(0) - p.value(1);
    &gap * &gap
}

// ---------------------------------------------------------------------------
// parallelogram(a, b): [(0,0),(a,a),(a,a+b),(0,b)], same areas as rectangle
// ---------------------------------------------------------------------------

fn parallelogram_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, b) = (p.value(0), p.value(1));
    let z = Rational::zero();
    region_of(vec![cell(vec![
        (z.clone(), z.clone()),
        (a.clone(), a.clone()),
        (a.clone(), a + b),
        (z, b.clone()),
    ])?])
}

// ---------------------------------------------------------------------------
// triangle(a): [(0,0),(a,0),(a,a)], white a^2/2, black (1-a)^2/2 for a >= 1/2
// ---------------------------------------------------------------------------

fn triangle_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    region_of(vec![bottom_triangle(&Rational::zero(), p.value(0))?])
}

fn triangle_black(p: &ParamPoint) -> Rational {
    let r = Rational::one() - p.value(0);
    &r * &r / ri(2)
}

// ---------------------------------------------------------------------------
// hexagon(a, b, c, d)
// ---------------------------------------------------------------------------

fn hexagon_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, b, c, d) = (p.value(0), p.value(1), p.value(2), p.value(3));
    let z = Rational::zero();
    region_of(vec![cell(vec![
        (z.clone(), z.clone()),
        (a.clone(), z.clone()),
        (a + b, b.clone()),
        (a + b, b + c),
        (d.clone(), b + c),
        (z, b + c - d),
    ])?])
}

fn hexagon_white_area(p: &ParamPoint) -> Rational {
    let (a, b, c, d) = (p.value(0), p.value(1), p.value(2), p.value(3));
    (a + b) * (b + c) - (b * b + d * d) / ri(2)
}

fn hexagon_black(p: &ParamPoint) -> Rational {
    let (a, b, c, d) = (p.value(0), p.value(1), p.value(2), p.value(3));
    let one = Rational::one();
    let t1 = &one - a - b - c;
    let t2 = &one - a - b - b - c + d;
    (&t1 * &t1 + &t2 * &t2) / ri(2)
}

// ---------------------------------------------------------------------------
// two_squares(a, s)
// ---------------------------------------------------------------------------

fn two_squares_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, s) = (p.value(0), p.value(1));
    region_of(vec![corner_square(a)?, bottom_square(s, a)?])
}

/// The always-on part: (s-a)(1-s-a) + (s-a)^2/4.
fn two_squares_t0(p: &ParamPoint) -> Rational {
    let (a, s) = (p.value(0), p.value(1));
    let sa = s - a;
    let rest = Rational::one() - s - a;
    &sa * &rest + rat(1, 4) * &sa * &sa
}

fn corner_term(p: &ParamPoint) -> Rational {
    // (1 - s - 2a)^2, used when s <= 1 - 2a.
    let (a, s) = (p.value(0), p.value(1));
    let t = Rational::one() - s - a - a;
    &t * &t
}

fn band_term(p: &ParamPoint) -> Rational {
    // (s - 2a)(1 - s - a), used when s >= 2a.
    let (a, s) = (p.value(0), p.value(1));
    (s - a - a) * (Rational::one() - s - a)
}

// ---------------------------------------------------------------------------
// two_triangles_same(a, s)
// ---------------------------------------------------------------------------

fn two_triangles_same_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, s) = (p.value(0), p.value(1));
    region_of(vec![
        bottom_triangle(&Rational::zero(), a)?,
        bottom_triangle(s, a)?,
    ])
}

/// 2(s-a)(1-s-a) + (s-a)^2/2 + (1-s-a)^2/2.
fn two_triangles_t0(p: &ParamPoint) -> Rational {
    let (a, s) = (p.value(0), p.value(1));
    let sa = s - a;
    let rest = Rational::one() - s - a;
    ri(2) * &sa * &rest + (&sa * &sa + &rest * &rest) / ri(2)
}

fn two_triangles_corner(p: &ParamPoint) -> Rational {
    // (1 - s - 2a)^2 / 2, used when s <= 1 - 2a.
    let (a, s) = (p.value(0), p.value(1));
    let t = Rational::one() - s - a - a;
    &t * &t / ri(2)
}

// ---------------------------------------------------------------------------
// two_triangles_opposite(a)
// ---------------------------------------------------------------------------

fn two_triangles_opposite_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let a = p.value(0);
    let one = Rational::one();
    let z = Rational::zero();
    region_of(vec![
        bottom_triangle(&z, a)?,
        // [(1-a,0),(1,0),(1-a,a)]: hypotenuse of slope -1 against the corner.
        cell(vec![
            (&one - a, z.clone()),
            (one.clone(), z),
            (&one - a, a.clone()),
        ])?,
    ])
}

fn two_triangles_opposite_black(p: &ParamPoint) -> Rational {
    let a = p.value(0);
    rat(1, 4) - a * a
}

// ---------------------------------------------------------------------------
// square_plus_triangle(a, s)
// ---------------------------------------------------------------------------

fn square_plus_triangle_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, s) = (p.value(0), p.value(1));
    region_of(vec![corner_square(a)?, bottom_triangle(s, a)?])
}

/// Corrected form: 2(s-a)(1-s-a) + (s-a)^2/4.
fn square_plus_triangle_t0(p: &ParamPoint) -> Rational {
    let (a, s) = (p.value(0), p.value(1));
    let sa = s - a;
    let rest = Rational::one() - s - a;
    ri(2) * &sa * &rest + rat(1, 4) * &sa * &sa
}

/// The formula as printed: leading coefficient `a` instead of 2.
fn square_plus_triangle_printed(p: &ParamPoint) -> Rational {
    let (a, s) = (p.value(0), p.value(1));
    let sa = s - a;
    let rest = Rational::one() - s - a;
    let clamp = (Rational::one() - s - a - a).max(Rational::zero());
    a * &sa * &rest + rat(1, 4) * &sa * &sa + &clamp * &clamp
}

// ---------------------------------------------------------------------------
// two_general_squares(a, b, s) and three_squares(a): optimizer-only
// ---------------------------------------------------------------------------

fn two_general_squares_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let (a, b, s) = (p.value(0), p.value(1), p.value(2));
    region_of(vec![corner_square(a)?, bottom_square(s, b)?])
}

fn three_squares_white(p: &ParamPoint) -> Result<Region, GeometryError> {
    let a = p.value(0);
    let one = Rational::one();
    let mid = (&one - a) / ri(2);
    let right = &one - a;
    region_of(vec![
        corner_square(a)?,
        bottom_square(&mid, a)?,
        bottom_square(&right, a)?,
    ])
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

pub(super) fn build_registry() -> Vec<FamilySpec> {
    let mut families = Vec::new();

    // rectangle(a, b)
    {
        let n = 2;
        families.push(FamilySpec {
            name: "rectangle",
            parameters: &["a", "b"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("a <= 1", n, ri(1), &[(0, ri(-1))]),
                con("b >= 0", n, ri(0), &[(1, ri(1))]),
                con("b <= 1", n, ri(1), &[(1, ri(-1))]),
            ],
            regime: vec![],
            builder: rectangle_white,
            closed_white: |p| p.value(0) * p.value(1),
            closed_white_f64: |x| x[0] * x[1],
            black_pieces: vec![
                BlackPiece {
                    id: "open",
                    guards: vec![con("a+b <= 1", n, ri(1), &[(0, ri(-1)), (1, ri(-1))])],
                    eval: rectangle_black_open,
                    eval_f64: |x| {
                        let t = 1.0 - x[0] - x[1];
                        t * t
                    },
                },
                BlackPiece {
                    id: "saturated",
                    guards: vec![con("a+b >= 1", n, ri(-1), &[(0, ri(1)), (1, ri(1))])],
                    eval: |_| Rational::zero(),
                    eval_f64: |_| 0.0,
                },
            ],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: vec![1.0 / 3.0, 1.0 / 3.0],
                area: Some(1.0 / 9.0),
                area_exact: Some(rat(1, 9)),
                area_label: "1/9",
                status: "exact",
                printed_s: None,
            }),
            interior_point: Some(vec![0.3, 0.3]),
        });
    }

    // parallelogram(a, b)
    {
        let n = 2;
        families.push(FamilySpec {
            name: "parallelogram",
            parameters: &["a", "b"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("b >= 0", n, ri(0), &[(1, ri(1))]),
                con("a+b <= 1", n, ri(1), &[(0, ri(-1)), (1, ri(-1))]),
            ],
            regime: vec![],
            builder: parallelogram_white,
            closed_white: |p| p.value(0) * p.value(1),
            closed_white_f64: |x| x[0] * x[1],
            black_pieces: vec![BlackPiece {
                id: "open",
                guards: vec![],
                eval: rectangle_black_open,
                eval_f64: |x| {
                    let t = 1.0 - x[0] - x[1];
                    t * t
                },
            }],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: vec![1.0 / 3.0, 1.0 / 3.0],
                area: Some(1.0 / 9.0),
                area_exact: Some(rat(1, 9)),
                area_label: "1/9",
                status: "exact",
                printed_s: None,
            }),
            interior_point: Some(vec![0.3, 0.3]),
        });
    }

    // triangle(a)
    {
        let n = 1;
        families.push(FamilySpec {
            name: "triangle",
            parameters: &["a"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("a <= 1", n, ri(1), &[(0, ri(-1))]),
            ],
            // Below a = 1/2 the engine finds an extra black piece
            // ((1-2a)^2/2 behind the far diagonal) that the printed formula
            // omits.
            regime: vec![con("a >= 1/2", n, rat(-1, 2), &[(0, ri(1))])],
            builder: triangle_white,
            closed_white: |p| p.value(0) * p.value(0) / ri(2),
            closed_white_f64: |x| x[0] * x[0] / 2.0,
            black_pieces: vec![BlackPiece {
                id: "main",
                guards: vec![],
                eval: triangle_black,
                eval_f64: |x| {
                    let r = 1.0 - x[0];
                    r * r / 2.0
                },
            }],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: vec![0.5],
                area: Some(0.125),
                area_exact: Some(rat(1, 8)),
                area_label: "1/8",
                status: "exact",
                printed_s: None,
            }),
            interior_point: Some(vec![0.5]),
        });
    }

    // hexagon(a, b, c, d)
    {
        let n = 4;
        families.push(FamilySpec {
            name: "hexagon",
            parameters: &["a", "b", "c", "d"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("b >= 0", n, ri(0), &[(1, ri(1))]),
                con("c >= 0", n, ri(0), &[(2, ri(1))]),
                con("d >= 0", n, ri(0), &[(3, ri(1))]),
                con("d <= a+b", n, ri(0), &[(0, ri(1)), (1, ri(1)), (3, ri(-1))]),
                con("d <= b+c", n, ri(0), &[(1, ri(1)), (2, ri(1)), (3, ri(-1))]),
                con("a+b <= 1", n, ri(1), &[(0, ri(-1)), (1, ri(-1))]),
                con("b+c <= 1", n, ri(1), &[(1, ri(-1)), (2, ri(-1))]),
            ],
            regime: vec![
                con("a+b+c <= 1", n, ri(1), &[(0, ri(-1)), (1, ri(-1)), (2, ri(-1))]),
                con(
                    "a+2b+c-d <= 1",
                    n,
                    ri(1),
                    &[(0, ri(-1)), (1, ri(-2)), (2, ri(-1)), (3, ri(1))],
                ),
            ],
            builder: hexagon_white,
            closed_white: hexagon_white_area,
            closed_white_f64: |x| {
                (x[0] + x[1]) * (x[1] + x[2]) - (x[1] * x[1] + x[3] * x[3]) / 2.0
            },
            black_pieces: vec![BlackPiece {
                id: "two-triangles",
                guards: vec![],
                eval: hexagon_black,
                eval_f64: |x| {
                    let t1 = 1.0 - x[0] - x[1] - x[2];
                    let t2 = 1.0 - x[0] - 2.0 * x[1] - x[2] + x[3];
                    (t1 * t1 + t2 * t2) / 2.0
                },
            }],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: {
                    let t = (3.0 - 3f64.sqrt()) / 6.0;
                    vec![t, t, t, t]
                },
                area: Some((2.0 - 3f64.sqrt()) / 2.0),
                area_exact: None,
                area_label: "(2-sqrt(3))/2",
                status: "surd",
                printed_s: None,
            }),
            interior_point: Some(vec![0.21, 0.21, 0.21, 0.2]),
        });
    }

    // jubin(a, b, c, d, e, f, g)
    families.push(jubin::spec());

    // two_squares(a, s)
    {
        let n = 2;
        families.push(FamilySpec {
            name: "two_squares",
            parameters: &["a", "s"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("a <= 1/2", n, rat(1, 2), &[(0, ri(-1))]),
                con("s >= a", n, ri(0), &[(0, ri(-1)), (1, ri(1))]),
                con("s <= 1-a", n, ri(1), &[(0, ri(-1)), (1, ri(-1))]),
            ],
            // Beyond s = 3a the squares are far enough apart that extra
            // black pockets open up between their shadows and the printed
            // mid-range formula undercounts.
            regime: vec![con("s <= 3a", n, ri(0), &[(0, ri(3)), (1, ri(-1))])],
            builder: two_squares_white,
            closed_white: |p| {
                let a = p.value(0);
                ri(2) * a * a
            },
            closed_white_f64: |x| 2.0 * x[0] * x[0],
            black_pieces: vec![
                BlackPiece {
                    id: "wide-high",
                    guards: vec![
                        con("s >= 2a", n, ri(0), &[(0, ri(-2)), (1, ri(1))]),
                        con("s >= 1-2a", n, ri(-1), &[(0, ri(2)), (1, ri(1))]),
                    ],
                    eval: |p| two_squares_t0(p) + band_term(p),
                    eval_f64: |x| ts_t0_f64(x) + (x[1] - 2.0 * x[0]) * (1.0 - x[1] - x[0]),
                },
                BlackPiece {
                    id: "wide-low",
                    guards: vec![
                        con("s >= 2a", n, ri(0), &[(0, ri(-2)), (1, ri(1))]),
                        con("s <= 1-2a", n, ri(1), &[(0, ri(-2)), (1, ri(-1))]),
                    ],
                    eval: |p| two_squares_t0(p) + band_term(p) + corner_term(p),
                    eval_f64: |x| {
                        let c = 1.0 - x[1] - 2.0 * x[0];
                        ts_t0_f64(x) + (x[1] - 2.0 * x[0]) * (1.0 - x[1] - x[0]) + c * c
                    },
                },
                BlackPiece {
                    id: "narrow-high",
                    guards: vec![
                        con("s <= 2a", n, ri(0), &[(0, ri(2)), (1, ri(-1))]),
                        con("s >= 1-2a", n, ri(-1), &[(0, ri(2)), (1, ri(1))]),
                    ],
                    eval: two_squares_t0,
                    eval_f64: ts_t0_f64,
                },
                BlackPiece {
                    id: "narrow-low",
                    guards: vec![
                        con("s <= 2a", n, ri(0), &[(0, ri(2)), (1, ri(-1))]),
                        con("s <= 1-2a", n, ri(1), &[(0, ri(-2)), (1, ri(-1))]),
                    ],
                    eval: |p| two_squares_t0(p) + corner_term(p),
                    eval_f64: |x| {
                        let c = 1.0 - x[1] - 2.0 * x[0];
                        ts_t0_f64(x) + c * c
                    },
                },
            ],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: vec![
                    (19.0 - 217f64.sqrt()) / 18.0,
                    13.0 / 18.0 - 217f64.sqrt() / 126.0,
                ],
                area: Some(289.0 / 81.0 - 19.0 * 217f64.sqrt() / 81.0),
                area_exact: None,
                area_label: "289/81 - 19*sqrt(217)/81",
                status: "surd",
                printed_s: None,
            }),
            interior_point: Some(vec![0.23, 0.55]),
        });
    }

    // two_triangles_same(a, s)
    {
        let n = 2;
        families.push(FamilySpec {
            name: "two_triangles_same",
            parameters: &["a", "s"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("a <= 1/2", n, rat(1, 2), &[(0, ri(-1))]),
                con("s >= a", n, ri(0), &[(0, ri(-1)), (1, ri(1))]),
                con("s <= 1-a", n, ri(1), &[(0, ri(-1)), (1, ri(-1))]),
            ],
            // Past s = 2a a diagonal pocket of area (s-2a)^2/4 opens but is
            // exactly offset by the reshaped upper piece; the formula only
            // breaks past s = 3a, where two pockets of (s-3a)^2/4 survive.
            regime: vec![con("s <= 3a", n, ri(0), &[(0, ri(3)), (1, ri(-1))])],
            builder: two_triangles_same_white,
            closed_white: |p| p.value(0) * p.value(0),
            closed_white_f64: |x| x[0] * x[0],
            black_pieces: vec![
                BlackPiece {
                    id: "high",
                    guards: vec![con("s >= 1-2a", n, ri(-1), &[(0, ri(2)), (1, ri(1))])],
                    eval: two_triangles_t0,
                    eval_f64: tt_t0_f64,
                },
                BlackPiece {
                    id: "low",
                    guards: vec![con("s <= 1-2a", n, ri(1), &[(0, ri(-2)), (1, ri(-1))])],
                    eval: |p| two_triangles_t0(p) + two_triangles_corner(p),
                    eval_f64: |x| {
                        let c = 1.0 - x[1] - 2.0 * x[0];
                        tt_t0_f64(x) + c * c / 2.0
                    },
                },
            ],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: vec![(3.0 - 3f64.sqrt()) / 4.0, 0.5],
                area: Some(0.75 - 0.375 * 3f64.sqrt()),
                area_exact: None,
                area_label: "3/4 - (3/8)*sqrt(3)",
                status: "surd",
                printed_s: None,
            }),
            interior_point: Some(vec![0.31, 0.5]),
        });
    }

    // two_triangles_opposite(a)
    {
        let n = 1;
        families.push(FamilySpec {
            name: "two_triangles_opposite",
            parameters: &["a"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("a <= 1/2", n, rat(1, 2), &[(0, ri(-1))]),
            ],
            // Below a = 1/3 the x+y shadows of the two triangles no longer
            // merge and extra black appears between them.
            regime: vec![con("a >= 1/3", n, rat(-1, 3), &[(0, ri(1))])],
            builder: two_triangles_opposite_white,
            closed_white: |p| p.value(0) * p.value(0),
            closed_white_f64: |x| x[0] * x[0],
            black_pieces: vec![BlackPiece {
                id: "main",
                guards: vec![],
                eval: two_triangles_opposite_black,
                eval_f64: |x| 0.25 - x[0] * x[0],
            }],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: vec![0.125f64.sqrt()],
                area: Some(0.125),
                area_exact: Some(rat(1, 8)),
                area_label: "1/8",
                status: "exact",
                printed_s: None,
            }),
            interior_point: Some(vec![0.4]),
        });
    }

    // square_plus_triangle(a, s)
    {
        let n = 2;
        let a_star = 2.0 * (8.0 - 42f64.sqrt()) / 11.0;
        families.push(FamilySpec {
            name: "square_plus_triangle",
            parameters: &["a", "s"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("a <= 1/2", n, rat(1, 2), &[(0, ri(-1))]),
                con("s >= a", n, ri(0), &[(0, ri(-1)), (1, ri(1))]),
                con("s <= 1-a", n, ri(1), &[(0, ri(-1)), (1, ri(-1))]),
            ],
            regime: vec![con("s <= 3a", n, ri(0), &[(0, ri(3)), (1, ri(-1))])],
            builder: square_plus_triangle_white,
            closed_white: |p| {
                let a = p.value(0);
                rat(3, 2) * a * a
            },
            closed_white_f64: |x| 1.5 * x[0] * x[0],
            black_pieces: vec![
                BlackPiece {
                    id: "high",
                    guards: vec![con("s >= 1-2a", n, ri(-1), &[(0, ri(2)), (1, ri(1))])],
                    eval: square_plus_triangle_t0,
                    eval_f64: st_t0_f64,
                },
                BlackPiece {
                    id: "low",
                    guards: vec![con("s <= 1-2a", n, ri(1), &[(0, ri(-2)), (1, ri(-1))])],
                    eval: |p| square_plus_triangle_t0(p) + corner_term(p),
                    eval_f64: |x| {
                        let c = 1.0 - x[1] - 2.0 * x[0];
                        st_t0_f64(x) + c * c
                    },
                },
            ],
            printed_black: Some(PrintedFormula {
                note: "printed leading coefficient `a`; engine derivation gives 2",
                eval: square_plus_triangle_printed,
            }),
            erratum: Some(
                "printed black-area formula and printed optimal s are inconsistent with the \
                 engine; printed a and printed maximum area match the corrected formula",
            ),
            claimed: Some(ClaimedOptimum {
                params: vec![a_star, (4.0 - a_star) / 7.0],
                area: Some(636.0 / 121.0 - 96.0 * 42f64.sqrt() / 121.0),
                area_exact: None,
                area_label: "636/121 - (96/121)*sqrt(42)",
                status: "erratum-s",
                printed_s: Some(0.495622162),
            }),
            interior_point: Some(vec![0.27, 0.5]),
        });
    }

    // two_general_squares(a, b, s): optimizer-only (Future Work)
    {
        let n = 3;
        families.push(FamilySpec {
            name: "two_general_squares",
            parameters: &["a", "b", "s"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("b >= 0", n, ri(0), &[(1, ri(1))]),
                con("s >= a", n, ri(0), &[(0, ri(-1)), (2, ri(1))]),
                con("s+b <= 1", n, ri(1), &[(1, ri(-1)), (2, ri(-1))]),
                con("a <= 1", n, ri(1), &[(0, ri(-1))]),
            ],
            regime: vec![],
            builder: two_general_squares_white,
            closed_white: |p| {
                let (a, b) = (p.value(0), p.value(1));
                a * a + b * b
            },
            closed_white_f64: |x| x[0] * x[0] + x[1] * x[1],
            black_pieces: vec![],
            printed_black: None,
            erratum: None,
            claimed: None,
            interior_point: Some(vec![0.23, 0.23, 0.55]),
        });
    }

    // three_squares(a): optimizer-only (Future Work)
    {
        let n = 1;
        families.push(FamilySpec {
            name: "three_squares",
            parameters: &["a"],
            domain: vec![
                con("a >= 0", n, ri(0), &[(0, ri(1))]),
                con("a <= 1/3", n, rat(1, 3), &[(0, ri(-1))]),
            ],
            regime: vec![],
            builder: three_squares_white,
            closed_white: |p| {
                let a = p.value(0);
                ri(3) * a * a
            },
            closed_white_f64: |x| 3.0 * x[0] * x[0],
            black_pieces: vec![],
            printed_black: None,
            erratum: None,
            claimed: Some(ClaimedOptimum {
                params: vec![1.0 / 6.0],
                area: None,
                area_exact: None,
                area_label: "side around 1/6",
                status: "approximate (future work)",
                printed_s: None,
            }),
            interior_point: Some(vec![0.16]),
        });
    }

    families
}

fn ts_t0_f64(x: &[f64]) -> f64 {
    let sa = x[1] - x[0];
    sa * (1.0 - x[1] - x[0]) + 0.25 * sa * sa
}

fn tt_t0_f64(x: &[f64]) -> f64 {
    let sa = x[1] - x[0];
    let rest = 1.0 - x[1] - x[0];
    2.0 * sa * rest + (sa * sa + rest * rest) / 2.0
}

fn st_t0_f64(x: &[f64]) -> f64 {
    let sa = x[1] - x[0];
    2.0 * sa * (1.0 - x[1] - x[0]) + 0.25 * sa * sa
}

#[cfg(test)]
mod tests {
    use super::super::{find, registry, verify_family, FamilyError, ParamPoint};
    use super::*;
    use crate::rational::{snap_f64, to_f64};

    #[test]
    fn registry_has_eleven_families_in_order() {
        let names: Vec<_> = registry().iter().map(|f| f.name).collect();
        assert_eq!(
            names,
            vec![
                "rectangle",
                "parallelogram",
                "triangle",
                "hexagon",
                "jubin",
                "two_squares",
                "two_triangles_same",
                "two_triangles_opposite",
                "square_plus_triangle",
                "two_general_squares",
                "three_squares",
            ]
        );
    }

    #[test]
    fn rectangle_closed_black_examples() {
        let f = find("rectangle").unwrap();
        let p = ParamPoint::new(f, vec![rat(1, 3), rat(1, 3)]).unwrap();
        let closed = f.closed_black_area(&p).unwrap();
        assert_eq!(closed.value, rat(1, 9));
        assert!(closed.in_regime);
        let (white, black) = f.engine_areas(&p).unwrap();
        assert_eq!(white, rat(1, 9));
        assert_eq!(black, rat(1, 9));
    }

    #[test]
    fn hexagon_symmetric_black_matches_paper_identity() {
        let f = find("hexagon").unwrap();
        for t in [rat(1, 5), rat(2, 9), rat(1, 4)] {
            let p = ParamPoint::new(f, vec![t.clone(), t.clone(), t.clone(), t.clone()]).unwrap();
            let expect = {
                let u = Rational::one() - ri(3) * &t;
                &u * &u
            };
            assert_eq!(f.closed_black_area(&p).unwrap().value, expect);
            let (_, engine_black) = f.engine_areas(&p).unwrap();
            assert_eq!(engine_black, expect);
        }
    }

    #[test]
    fn build_white_domain_violation_names_constraint() {
        let f = find("two_squares").unwrap();
        let p = ParamPoint::new(f, vec![rat(1, 4), rat(1, 8)]).unwrap();
        match f.build_white(&p) {
            Err(FamilyError::DomainViolation(label)) => assert_eq!(label, "s >= a"),
            other => panic!("expected domain violation, got {other:?}"),
        }
    }

    #[test]
    fn triangle_half_is_one_cell_eighth() {
        let f = find("triangle").unwrap();
        let p = ParamPoint::new(f, vec![rat(1, 2)]).unwrap();
        let white = f.build_white(&p).unwrap();
        assert_eq!(white.cells().len(), 1);
        assert_eq!(white.area(), rat(1, 8));
        let (w, b) = f.engine_areas(&p).unwrap();
        assert_eq!(w, rat(1, 8));
        assert_eq!(b, rat(1, 8));
    }

    #[test]
    fn two_squares_surd_optimum_close() {
        let f = find("two_squares").unwrap();
        let claimed = f.claimed.as_ref().unwrap();
        let a = snap_f64(claimed.params[0], 1e-12);
        let s = snap_f64(claimed.params[1], 1e-12);
        let p = ParamPoint::new(f, vec![a, s]).unwrap();
        let closed = f.closed_black_area(&p).unwrap();
        assert!(closed.in_regime);
        assert_eq!(closed.piece, "wide-high");
        assert!((to_f64(&closed.value) - 0.112500281).abs() < 1e-6);
        let (white, black) = f.engine_areas(&p).unwrap();
        assert!((to_f64(&white) - 0.112500281).abs() < 1e-6);
        assert_eq!(black, closed.value);
    }

    #[test]
    fn two_triangles_same_surd_optimum_close() {
        let f = find("two_triangles_same").unwrap();
        let a = snap_f64((3.0 - 3f64.sqrt()) / 4.0, 1e-12);
        let p = ParamPoint::new(f, vec![a, rat(1, 2)]).unwrap();
        let closed = f.closed_black_area(&p).unwrap();
        assert!(closed.in_regime);
        assert!((to_f64(&closed.value) - 0.1004809470).abs() < 1e-6);
    }

    // The printed square-plus-triangle (a, s) pair: the engine refutes
    // equal areas by about 2.3e-3, and the erratum must be flagged.
    #[test]
    fn square_plus_triangle_printed_point_violates_equal_area() {
        let f = find("square_plus_triangle").unwrap();
        let claimed = f.claimed.as_ref().unwrap();
        let a = snap_f64(claimed.params[0], 1e-12);
        let s = snap_f64(claimed.printed_s.unwrap(), 1e-12);
        let p = ParamPoint::new(f, vec![a, s]).unwrap();
        let report = verify_family(f, &p).unwrap();
        assert!(report.erratum.is_some());
        assert!((report.engine_white.value - 0.114454).abs() < 1e-4);
        assert!((report.engine_black.value - 0.112142).abs() < 1e-4);
        let gap = report.equal_area_gap.value;
        assert!((gap - 2.3e-3).abs() < 2e-4, "gap {gap}");
        // The corrected closed form still matches the engine exactly here.
        assert_eq!(report.black_discrepancy.unwrap().exact, "0");
    }

    // At the engine-derived s = (4-a)/7 the areas do balance.
    #[test]
    fn square_plus_triangle_corrected_s_balances() {
        let f = find("square_plus_triangle").unwrap();
        let claimed = f.claimed.as_ref().unwrap();
        let a = snap_f64(claimed.params[0], 1e-12);
        let s = snap_f64(claimed.params[1], 1e-12);
        let p = ParamPoint::new(f, vec![a, s]).unwrap();
        let report = verify_family(f, &p).unwrap();
        assert!(report.equal_area_gap.value.abs() < 1e-8);
        assert!((report.engine_white.value - 0.1144536616).abs() < 1e-6);
    }

    // The printed formula (leading coefficient `a`) must NOT match the
    // engine at an in-regime point; the corrected one must.
    #[test]
    fn printed_formula_disagrees_corrected_agrees() {
        let f = find("square_plus_triangle").unwrap();
        let p = ParamPoint::new(f, vec![rat(28, 100), rat(53, 100)]).unwrap();
        assert!(f.in_regime(&p));
        let (_, engine_black) = f.engine_areas(&p).unwrap();
        let corrected = f.closed_black_area(&p).unwrap().value;
        let printed = (f.printed_black.as_ref().unwrap().eval)(&p);
        assert_eq!(engine_black, corrected);
        assert_ne!(engine_black, printed);
    }

    // Exact pocket areas beyond the regime boundary. These pin down the
    // regime analysis: past s = 3a the two bottom shapes are far enough
    // apart that three extra black pockets of area (s-3a)^2/4 each open
    // between their shadows.
    #[test]
    fn out_of_regime_pocket_areas_are_exact() {
        for name in ["two_squares", "square_plus_triangle"] {
            let f = find(name).unwrap();
            let p = ParamPoint::new(f, vec![rat(1, 5), rat(7, 10)]).unwrap();
            assert!(!f.in_regime(&p));
            let closed = f.closed_black_area(&p).unwrap();
            assert!(!closed.in_regime);
            let (_, engine_black) = f.engine_areas(&p).unwrap();
            // 3 * (s - 3a)^2 / 4 with s - 3a = 1/10.
            let pocket = rat(3, 4) * rat(1, 100);
            assert_eq!(&engine_black - &closed.value, pocket, "family {name}");
        }
    }

    // Triangles have one-sided diagonal shadows, so only two of the three
    // pockets appear past s = 3a.
    #[test]
    fn two_triangles_same_pockets_past_3a() {
        let f = find("two_triangles_same").unwrap();
        let p = ParamPoint::new(f, vec![rat(1, 5), rat(13, 20)]).unwrap();
        assert!(!f.in_regime(&p));
        let closed = f.closed_black_area(&p).unwrap();
        let (_, engine_black) = f.engine_areas(&p).unwrap();
        // 2 * (s - 3a)^2 / 4 with s - 3a = 1/20.
        assert_eq!(&engine_black - &closed.value, rat(1, 800));
        // Between 2a and 3a the diagonal pocket cancels exactly.
        let p = ParamPoint::new(f, vec![rat(3, 10), rat(13, 20)]).unwrap();
        assert!(f.in_regime(&p));
        let closed = f.closed_black_area(&p).unwrap();
        let (_, engine_black) = f.engine_areas(&p).unwrap();
        assert_eq!(engine_black, closed.value);
    }

    #[test]
    fn triangle_small_a_pocket_is_half_square() {
        let f = find("triangle").unwrap();
        let p = ParamPoint::new(f, vec![rat(2, 5)]).unwrap();
        assert!(!f.in_regime(&p));
        let closed = f.closed_black_area(&p).unwrap();
        let (_, engine_black) = f.engine_areas(&p).unwrap();
        // (1 - 2a)^2 / 2 with 1 - 2a = 1/5.
        assert_eq!(&engine_black - &closed.value, rat(1, 50));
    }

    #[test]
    fn opposite_small_a_pockets_are_exact() {
        let f = find("two_triangles_opposite").unwrap();
        // Extra black below a = 1/3: (1-3a)^2/2 + (max(1-4a,0))^2/4.
        let p = ParamPoint::new(f, vec![rat(1, 5)]).unwrap();
        assert!(!f.in_regime(&p));
        let closed = f.closed_black_area(&p).unwrap();
        let (_, engine_black) = f.engine_areas(&p).unwrap();
        assert_eq!(&engine_black - &closed.value, rat(9, 100));
        let p = ParamPoint::new(f, vec![rat(3, 10)]).unwrap();
        let closed = f.closed_black_area(&p).unwrap();
        let (_, engine_black) = f.engine_areas(&p).unwrap();
        assert_eq!(&engine_black - &closed.value, rat(1, 200));
    }

    // Guard boundaries: every pair of adjacent pieces agrees in value
    // exactly where both guards hold.
    #[test]
    fn piece_continuity_on_guard_boundaries() {
        let boundary_points: &[(&str, i64, i64, i64, i64)] = &[
            // (family, a_num, a_den, s_num, s_den) on a guard line.
            ("two_squares", 1, 4, 1, 2),          // s = 2a
            ("two_squares", 1, 5, 3, 5),          // s = 1 - 2a
            ("two_squares", 1, 4, 1, 2),          // s = 2a = 1 - 2a corner
            ("two_triangles_same", 1, 4, 1, 2),   // s = 1 - 2a
            ("square_plus_triangle", 1, 4, 1, 2), // s = 1 - 2a
        ];
        for &(name, an, ad, sn, sd) in boundary_points {
            let f = find(name).unwrap();
            let p = ParamPoint::new(f, vec![rat(an, ad), rat(sn, sd)]).unwrap();
            let matching: Vec<Rational> = f
                .black_pieces
                .iter()
                .filter(|piece| piece.guards.iter().all(|g| g.satisfied(p.values())))
                .map(|piece| (piece.eval)(&p))
                .collect();
            assert!(matching.len() >= 2, "{name}: expected a guard boundary");
            assert!(
                matching.windows(2).all(|w| w[0] == w[1]),
                "{name}: pieces disagree at the boundary"
            );
        }
    }

    fn sample_in_regime(name: &str, count: usize, seed: u64) -> Vec<ParamPoint> {
        super::super::sampling::sample_in_regime(find(name).unwrap(), count, seed)
    }

    // Engine equals closed form exactly on random in-regime points, for
    // every family that has a closed black form.
    #[test]
    fn engine_matches_closed_forms_in_regime() {
        for f in registry() {
            if !f.has_closed_black() {
                continue;
            }
            for p in sample_in_regime(f.name, 40, 0xFEED) {
                let (white, black) = f.engine_areas(&p).unwrap();
                assert_eq!(
                    white,
                    f.closed_white_area(&p),
                    "white mismatch for {} at {:?}",
                    f.name,
                    p.to_string_map()
                );
                let closed = f.closed_black_area(&p).unwrap();
                assert!(closed.in_regime);
                assert_eq!(
                    black, closed.value,
                    "black mismatch for {} piece {} at {:?}",
                    f.name, closed.piece, p.to_string_map()
                );
            }
        }
    }

    // Float piece evaluation tracks the exact one.
    #[test]
    fn f64_formulas_track_exact_ones() {
        for f in registry() {
            if !f.has_closed_black() {
                continue;
            }
            for p in sample_in_regime(f.name, 10, 0xBEEF) {
                let x = p.to_f64_vec();
                let exact = f.closed_black_area(&p).unwrap();
                let (approx, piece) = f.closed_black_f64(&x).unwrap();
                assert_eq!(piece, exact.piece);
                assert!((approx - to_f64(&exact.value)).abs() < 1e-12);
                assert!(((f.closed_white_f64)(&x) - to_f64(&f.closed_white_area(&p))).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn optimizer_only_families_error_on_closed_black() {
        let f = find("three_squares").unwrap();
        let p = ParamPoint::new(f, vec![rat(1, 6)]).unwrap();
        assert!(matches!(
            f.closed_black_area(&p),
            Err(FamilyError::NoClosedForm(_))
        ));
        // But the engine path works fine.
        let (w, b) = f.engine_areas(&p).unwrap();
        assert_eq!(w, rat(3, 36) * ri(1));
        assert!(b > Rational::zero());
    }

    #[test]
    fn parallelogram_matches_rectangle_closed_forms() {
        let fp = find("parallelogram").unwrap();
        let p = ParamPoint::new(fp, vec![rat(1, 3), rat(1, 3)]).unwrap();
        let (w, b) = fp.engine_areas(&p).unwrap();
        assert_eq!(w, rat(1, 9));
        assert_eq!(b, rat(1, 9));
    }

    #[test]
    fn registry_json_shape() {
        let v = super::super::registry_json();
        assert_eq!(v["families"].as_array().unwrap().len(), 11);
        assert_eq!(v["families"][0]["name"], "rectangle");
        assert_eq!(v["families"][9]["optimizer_only"], true);
    }
}
