//! Convex polygons with exact rational vertices and half-plane clipping.

use super::{Direction, GeometryError, HalfPlane, Point, Sense, Strip};
use crate::rational::Rational;
use num_traits::Zero;

/// Cross product of `b - a` and `c - b`; positive for a left turn.
fn turn(a: &Point, b: &Point, c: &Point) -> Rational {
    let abx = &b.x - &a.x;
    let aby = &b.y - &a.y;
    let bcx = &c.x - &b.x;
    let bcy = &c.y - &b.y;
    &abx * &bcy - &aby * &bcx
}

/// Exact signed shoelace area of a vertex loop; >= 0 for counter-clockwise
/// input, 0 for fewer than three distinct vertices.
pub fn polygon_area(vertices: &[Point]) -> Rational {
    if vertices.len() < 3 {
        return Rational::zero();
    }
    let mut twice = Rational::zero();
    for (i, v) in vertices.iter().enumerate() {
        let w = &vertices[(i + 1) % vertices.len()];
        twice += &v.x * &w.y - &w.x * &v.y;
    }
    twice / Rational::from_integer(2.into())
}

/// Convex counter-clockwise polygon with positive area.
///
/// Construction canonicalizes the vertex loop (consecutive duplicates and
/// collinear middle vertices dropped), so a pentagon built with a degenerate
/// parameter comes out as the quadrilateral or triangle it actually is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        match Self::try_from_loop(vertices)? {
            Some(p) => Ok(p),
            None => Err(GeometryError::DegeneratePolygon),
        }
    }

    /// Canonicalizes and validates; `Ok(None)` when the loop has no area.
    pub fn try_from_loop(vertices: Vec<Point>) -> Result<Option<Self>, GeometryError> {
        let vertices = canonicalize(vertices);
        if vertices.len() < 3 {
            return Ok(None);
        }
        if polygon_area(&vertices).is_zero() {
            return Ok(None);
        }
        let n = vertices.len();
        for i in 0..n {
            let t = turn(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if t <= Rational::zero() {
                return Err(GeometryError::NotConvexCcw);
            }
        }
        Ok(Some(ConvexPolygon { vertices }))
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> Rational {
        polygon_area(&self.vertices)
    }

    /// Sutherland-Hodgman clip against a single queen-direction half-plane.
    /// Returns `None` when the intersection has zero area. Output vertices
    /// are exact: queen-direction lines meet queen-aligned edges in rational
    /// points (and in fact meet *any* rational edge rationally).
    pub fn clip(&self, hp: &HalfPlane) -> Option<ConvexPolygon> {
        let inside = |f: &Rational| match hp.sense {
            Sense::LessThan => f <= &hp.bound,
            Sense::GreaterThan => f >= &hp.bound,
        };
        let n = self.vertices.len();
        let values: Vec<Rational> = self
            .vertices
            .iter()
            .map(|v| hp.direction.functional(v))
            .collect();
        let mut out: Vec<Point> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let j = (i + 1) % n;
            let (cur, nxt) = (&self.vertices[i], &self.vertices[j]);
            let (fc, fn_) = (&values[i], &values[j]);
            let ic = inside(fc);
            if ic {
                out.push(cur.clone());
            }
            if ic != inside(fn_) {
                // fc != fn_ here, so the division is well defined.
                let t = (&hp.bound - fc) / (fn_ - fc);
                let x = &cur.x + &t * (&nxt.x - &cur.x);
                let y = &cur.y + &t * (&nxt.y - &cur.y);
                out.push(Point::new(x, y));
            }
        }
        ConvexPolygon::try_from_loop(out).expect("clip of a convex polygon stays convex")
    }

    /// Functional range of the polygon in one direction (vertex extrema).
    pub fn strip(&self, direction: Direction) -> Strip {
        let mut values = self.vertices.iter().map(|v| direction.functional(v));
        let first = values.next().expect("polygon has vertices");
        let (mut lo, mut hi) = (first.clone(), first);
        for v in values {
            if v < lo {
                lo = v.clone();
            }
            if v > hi {
                hi = v;
            }
        }
        Strip::new(direction, lo, hi)
    }

    /// The four attack strips of a connected white cell, in direction order
    /// `X, Y, Sum, Diff`.
    pub fn attack_strips(&self) -> [Strip; 4] {
        Direction::ALL.map(|d| self.strip(d))
    }

    /// Strict interior membership.
    pub fn contains_interior(&self, p: &Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let cross = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
            cross > Rational::zero()
        })
    }

    /// Closed membership (interior or boundary).
    pub fn contains_closed(&self, p: &Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let cross = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
            cross >= Rational::zero()
        })
    }

    pub fn is_queen_aligned(&self) -> bool {
        self.edge_halfplanes().is_ok()
    }

    /// The inward half-plane of every edge. Errors unless all edges are
    /// queen-aligned (slope 0, infinity, +1 or -1).
    pub fn edge_halfplanes(&self) -> Result<Vec<HalfPlane>, GeometryError> {
        let n = self.vertices.len();
        let mut planes = Vec::with_capacity(n);
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let dx = &b.x - &a.x;
            let dy = &b.y - &a.y;
            // Interior lies to the left of a CCW edge.
            let hp = if dx.is_zero() {
                if dy > Rational::zero() {
                    HalfPlane::less_than(Direction::X, a.x.clone())
                } else {
                    HalfPlane::greater_than(Direction::X, a.x.clone())
                }
            } else if dy.is_zero() {
                if dx > Rational::zero() {
                    HalfPlane::greater_than(Direction::Y, a.y.clone())
                } else {
                    HalfPlane::less_than(Direction::Y, a.y.clone())
                }
            } else if dx == dy {
                // Slope +1: constant x - y along the edge.
                if dx > Rational::zero() {
                    HalfPlane::less_than(Direction::Diff, &a.x - &a.y)
                } else {
                    HalfPlane::greater_than(Direction::Diff, &a.x - &a.y)
                }
            } else if dx == -dy.clone() {
                // Slope -1: constant x + y along the edge.
                if dx > Rational::zero() {
                    HalfPlane::greater_than(Direction::Sum, &a.x + &a.y)
                } else {
                    HalfPlane::less_than(Direction::Sum, &a.x + &a.y)
                }
            } else {
                return Err(GeometryError::NotQueenAligned);
            };
            planes.push(hp);
        }
        Ok(planes)
    }

    /// Intersection of two queen-aligned convex polygons (clip by the other
    /// polygon's edge half-planes). `None` when the overlap has zero area.
    pub fn intersect(&self, other: &ConvexPolygon) -> Result<Option<ConvexPolygon>, GeometryError> {
        let mut current = self.clone();
        for hp in other.edge_halfplanes()? {
            // Closed clipping along the edge carrier line: use the closure of
            // the inward side, which `clip` already applies.
            match current.clip(&hp) {
                Some(next) => current = next,
                None => return Ok(None),
            }
        }
        Ok(Some(current))
    }

    /// Rotates the vertex loop to start at the lexicographically smallest
    /// vertex; used for deterministic output and polygon comparison.
    pub fn canonical_rotation(&self) -> ConvexPolygon {
        let min_idx = self
            .vertices
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.cmp(b))
            .map(|(i, _)| i)
            .expect("polygon has vertices");
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(min_idx);
        ConvexPolygon { vertices }
    }

    /// Open horizontal slice `{x : (x, y) interior}` as `(xl, xr)`, or `None`
    /// when `y` is not strictly between the polygon's vertical extrema.
    pub fn horizontal_slice(&self, y: &Rational) -> Option<(Rational, Rational)> {
        let ys = self.strip(Direction::Y);
        if !(&ys.lo < y && y < &ys.hi) {
            return None;
        }
        let n = self.vertices.len();
        let mut xl: Option<Rational> = None;
        let mut xr: Option<Rational> = None;
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
            if !(ylo <= y && y <= yhi) || a.y == b.y {
                continue;
            }
            let t = (y - &a.y) / (&b.y - &a.y);
            let x = &a.x + &t * (&b.x - &a.x);
            if xl.as_ref().is_none_or(|cur| &x < cur) {
                xl = Some(x.clone());
            }
            if xr.as_ref().is_none_or(|cur| &x > cur) {
                xr = Some(x);
            }
        }
        match (xl, xr) {
            (Some(l), Some(r)) if l < r => Some((l, r)),
            _ => None,
        }
    }
}

/// Drops consecutive duplicates and collinear middle vertices (wrapping).
fn canonicalize(vertices: Vec<Point>) -> Vec<Point> {
    let mut v: Vec<Point> = Vec::with_capacity(vertices.len());
    for p in vertices {
        if v.last() != Some(&p) {
            v.push(p);
        }
    }
    while v.len() > 1 && v.first() == v.last() {
        v.pop();
    }
    // Remove one degenerate vertex at a time until stable; duplicates have
    // zero turn as well, so spikes collapse here too.
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        match (0..n).find(|&i| turn(&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]).is_zero()) {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{poly, pt};
    use super::*;
    use crate::rational::rat;

    fn unit_square() -> ConvexPolygon {
        poly(&[(0, 1, 0, 1), (1, 1, 0, 1), (1, 1, 1, 1), (0, 1, 1, 1)])
    }

    #[test]
    fn shoelace_unit_square_is_one() {
        assert_eq!(unit_square().area(), rat(1, 1));
    }

    #[test]
    fn shoelace_degenerate_is_zero() {
        assert_eq!(polygon_area(&[pt(0, 1, 0, 1), pt(1, 1, 1, 1)]), rat(0, 1));
        assert_eq!(
            polygon_area(&[pt(0, 1, 0, 1), pt(1, 2, 1, 2), pt(1, 1, 1, 1)]),
            rat(0, 1)
        );
    }

    // Hand shoelace: 23/288, which is the left-pentagon white-area term
    // a*b - e^2/2 at a=1/4, b=1/3, e=1/12.
    #[test]
    fn shoelace_left_pentagon() {
        let p = poly(&[
            (0, 1, 0, 1),
            (1, 4, 1, 4),
            (1, 4, 1, 2),
            (1, 6, 1, 2),
            (0, 1, 1, 3),
        ]);
        assert_eq!(p.area(), rat(23, 288));
        assert_eq!(rat(1, 4) * rat(1, 3) - rat(1, 12) * rat(1, 12) / rat(2, 1), rat(23, 288));
    }

    #[test]
    fn shoelace_corner_triangle() {
        let p = poly(&[(0, 1, 0, 1), (1, 2, 0, 1), (1, 2, 1, 2)]);
        assert_eq!(p.area(), rat(1, 8));
    }

    #[test]
    fn clip_square_by_vertical() {
        let clipped = unit_square()
            .clip(&HalfPlane::less_than(Direction::X, rat(1, 2)))
            .unwrap();
        assert_eq!(clipped.area(), rat(1, 2));
    }

    #[test]
    fn clip_to_empty() {
        assert!(unit_square()
            .clip(&HalfPlane::greater_than(Direction::Sum, rat(2, 1)))
            .is_none());
        // Touching along a line only: zero area, also empty.
        assert!(unit_square()
            .clip(&HalfPlane::greater_than(Direction::X, rat(1, 1)))
            .is_none());
    }

    // Hand computation: the diff > 1/2 corner of the lower-right triangle.
    #[test]
    fn clip_triangle_by_diff() {
        let t = poly(&[(0, 1, 0, 1), (1, 1, 0, 1), (1, 1, 1, 1)]);
        let clipped = t
            .clip(&HalfPlane::greater_than(Direction::Diff, rat(1, 2)))
            .unwrap();
        let expected = poly(&[(1, 2, 0, 1), (1, 1, 0, 1), (1, 1, 1, 2)]);
        assert_eq!(
            clipped.canonical_rotation().vertices(),
            expected.canonical_rotation().vertices()
        );
        assert_eq!(clipped.area(), rat(1, 8));
    }

    #[test]
    fn attack_strips_of_corner_square() {
        let s = poly(&[(0, 1, 0, 1), (1, 3, 0, 1), (1, 3, 1, 3), (0, 1, 1, 3)]);
        let strips = s.attack_strips();
        assert_eq!((strips[0].lo.clone(), strips[0].hi.clone()), (rat(0, 1), rat(1, 3)));
        assert_eq!((strips[1].lo.clone(), strips[1].hi.clone()), (rat(0, 1), rat(1, 3)));
        assert_eq!((strips[2].lo.clone(), strips[2].hi.clone()), (rat(0, 1), rat(2, 3)));
        assert_eq!((strips[3].lo.clone(), strips[3].hi.clone()), (rat(-1, 3), rat(1, 3)));
    }

    // The hypotenuse of a shifted right triangle has constant x - y = s.
    #[test]
    fn attack_strips_of_shifted_triangle() {
        let t = poly(&[(2, 5, 0, 1), (7, 10, 0, 1), (7, 10, 3, 10)]);
        let diff = t.strip(Direction::Diff);
        assert_eq!((diff.lo, diff.hi), (rat(2, 5), rat(7, 10)));
    }

    // Jubin's left pentagon at the optimum reaches x+y = 3/4 at (1/4, 1/2).
    #[test]
    fn attack_strips_left_pentagon_sum() {
        let p = poly(&[
            (0, 1, 0, 1),
            (1, 4, 1, 4),
            (1, 4, 1, 2),
            (1, 6, 1, 2),
            (0, 1, 1, 3),
        ]);
        let sum = p.strip(Direction::Sum);
        assert_eq!((sum.lo, sum.hi), (rat(0, 1), rat(3, 4)));
    }

    #[test]
    fn canonicalize_drops_duplicates_and_collinear() {
        let p = ConvexPolygon::new(vec![
            pt(0, 1, 0, 1),
            pt(1, 2, 0, 1),
            pt(1, 2, 0, 1),
            pt(1, 1, 0, 1),
            pt(1, 1, 1, 1),
            pt(0, 1, 1, 1),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn rejects_clockwise_and_nonconvex() {
        assert_eq!(
            ConvexPolygon::new(vec![pt(0, 1, 0, 1), pt(0, 1, 1, 1), pt(1, 1, 0, 1)]).unwrap_err(),
            GeometryError::NotConvexCcw
        );
        assert_eq!(
            ConvexPolygon::new(vec![pt(0, 1, 0, 1), pt(1, 1, 0, 1)]).unwrap_err(),
            GeometryError::DegeneratePolygon
        );
    }

    #[test]
    fn contains_is_strict() {
        let sq = unit_square();
        assert!(sq.contains_interior(&pt(1, 2, 1, 2)));
        assert!(!sq.contains_interior(&pt(0, 1, 1, 2)));
        assert!(sq.contains_closed(&pt(0, 1, 1, 2)));
    }

    #[test]
    fn clipping_preserves_queen_alignment() {
        let p = unit_square();
        let clipped = p
            .clip(&HalfPlane::less_than(Direction::Sum, rat(3, 2)))
            .unwrap()
            .clip(&HalfPlane::greater_than(Direction::Diff, rat(-1, 2)))
            .unwrap();
        assert!(clipped.is_queen_aligned());
    }

    #[test]
    fn intersect_adjacent_is_empty() {
        let left = poly(&[(0, 1, 0, 1), (1, 2, 0, 1), (1, 2, 1, 1), (0, 1, 1, 1)]);
        let right = poly(&[(1, 2, 0, 1), (1, 1, 0, 1), (1, 1, 1, 1), (1, 2, 1, 1)]);
        assert!(left.intersect(&right).unwrap().is_none());
        assert_eq!(
            left.intersect(&left).unwrap().unwrap().area(),
            left.area()
        );
    }

    #[test]
    fn horizontal_slice_of_triangle() {
        let t = poly(&[(0, 1, 0, 1), (1, 1, 0, 1), (1, 1, 1, 1)]);
        let (xl, xr) = t.horizontal_slice(&rat(1, 2)).unwrap();
        assert_eq!((xl, xr), (rat(1, 2), rat(1, 1)));
        assert!(t.horizontal_slice(&rat(1, 1)).is_none());
        assert!(t.horizontal_slice(&rat(3, 2)).is_none());
    }
}
