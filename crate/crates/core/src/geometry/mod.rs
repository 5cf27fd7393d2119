//! Exact rational planar geometry for queen-aligned polygons.
//!
//! A queen placed at `(u, v)` attacks every point sharing one of the four
//! functionals `x`, `y`, `x+y`, `x-y` with it. All geometry here is built
//! from those four directions: attack strips are functional intervals, and
//! the non-attacking region of a white region is the unit square minus the
//! strips of every white cell.
//!
//! Conventions (fixed across the crate):
//! * polygons are interpreted as their open interiors; boundary contact is
//!   measure zero and permitted,
//! * strips are closed, so the complement of a strip inside an open cell is
//!   a pair of open cells,
//! * no floating point anywhere in this module.

mod polygon;
mod raster;
mod region;

pub use polygon::{polygon_area, ConvexPolygon};
pub use raster::{center_cells, full_cells, raster_count};
pub use region::{black_region, mutual_nonattack, region_area, Region};

use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("polygon has fewer than 3 distinct vertices")]
    DegeneratePolygon,
    #[error("polygon vertices are not convex in counter-clockwise order")]
    NotConvexCcw,
    #[error("region cell escapes the unit square")]
    OutsideUnitSquare,
    #[error("region cells have overlapping interiors")]
    OverlappingCells,
    #[error("polygon edge is not queen-aligned (slope not in {{0, inf, +1, -1}})")]
    NotQueenAligned,
}

/// The four queen directions, as linear functionals on points.
///
/// `Diff` is `x - y`; diagonal constraints stated as `y - x` elsewhere
/// translate with a sign flip, which is immaterial for intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    X,
    Y,
    Sum,
    Diff,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::X, Direction::Y, Direction::Sum, Direction::Diff];

    pub fn functional(self, p: &Point) -> Rational {
        match self {
            Direction::X => p.x.clone(),
            Direction::Y => p.y.clone(),
            Direction::Sum => &p.x + &p.y,
            Direction::Diff => &p.x - &p.y,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    LessThan,
    GreaterThan,
}

/// Open half-plane `{p : functional(p) < bound}` or `{p : functional(p) > bound}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPlane {
    pub direction: Direction,
    pub bound: Rational,
    pub sense: Sense,
}

impl HalfPlane {
    pub fn less_than(direction: Direction, bound: Rational) -> Self {
        HalfPlane { direction, bound, sense: Sense::LessThan }
    }

    pub fn greater_than(direction: Direction, bound: Rational) -> Self {
        HalfPlane { direction, bound, sense: Sense::GreaterThan }
    }

    pub fn strictly_contains(&self, p: &Point) -> bool {
        let f = self.direction.functional(p);
        match self.sense {
            Sense::LessThan => f < self.bound,
            Sense::GreaterThan => f > self.bound,
        }
    }
}

/// Closed strip `{p : lo <= functional(p) <= hi}` - the attack shadow of a
/// connected white cell in one queen direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub direction: Direction,
    pub lo: Rational,
    pub hi: Rational,
}

impl Strip {
    pub fn new(direction: Direction, lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Strip { direction, lo, hi }
    }

    pub fn contains_closed(&self, p: &Point) -> bool {
        let f = self.direction.functional(p);
        self.lo <= f && f <= self.hi
    }

    /// The two open half-planes whose union is the strip's complement.
    pub fn complement_halfplanes(&self) -> [HalfPlane; 2] {
        [
            HalfPlane::less_than(self.direction, self.lo.clone()),
            HalfPlane::greater_than(self.direction, self.hi.clone()),
        ]
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;
    use crate::rational::rat;

    pub fn pt(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::new(rat(xn, xd), rat(yn, yd))
    }

    pub fn poly(coords: &[(i64, i64, i64, i64)]) -> ConvexPolygon {
        ConvexPolygon::new(coords.iter().map(|&(a, b, c, d)| pt(a, b, c, d)).collect())
            .expect("valid polygon")
    }
}
