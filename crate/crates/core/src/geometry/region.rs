//! Regions: disjoint unions of convex cells inside the unit square, and the
//! black-region computation.

use super::{ConvexPolygon, GeometryError, Point};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Disjoint union of convex cells, all inside the unit square. Houses both
/// the white configuration `W` and the non-attacking region `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    cells: Vec<ConvexPolygon>,
}

impl Region {
    /// Validates unit-square containment and pairwise interior-disjointness.
    pub fn new(cells: Vec<ConvexPolygon>) -> Result<Self, GeometryError> {
        for cell in &cells {
            check_in_unit_square(cell)?;
        }
        for i in 0..cells.len() {
            for j in (i + 1)..cells.len() {
                if cells[i].intersect(&cells[j])?.is_some() {
                    return Err(GeometryError::OverlappingCells);
                }
            }
        }
        Ok(Region { cells })
    }

    /// Cells already known disjoint (clipping construction preserves it).
    pub(crate) fn from_disjoint_cells(cells: Vec<ConvexPolygon>) -> Self {
        Region { cells }
    }

    pub fn empty() -> Self {
        Region { cells: Vec::new() }
    }

    pub fn unit_square() -> Self {
        let one = Rational::one();
        let zero = Rational::zero();
        let square = ConvexPolygon::new(vec![
            Point::new(zero.clone(), zero.clone()),
            Point::new(one.clone(), zero.clone()),
            Point::new(one.clone(), one.clone()),
            Point::new(zero, one),
        ])
        .expect("unit square is a valid polygon");
        Region { cells: vec![square] }
    }

    pub fn cells(&self) -> &[ConvexPolygon] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn area(&self) -> Rational {
        self.cells.iter().map(|c| c.area()).sum()
    }

    /// True iff `p` lies in the open interior of some cell.
    pub fn contains(&self, p: &Point) -> bool {
        self.cells.iter().any(|c| c.contains_interior(p))
    }

    /// Exact area of the overlap with another region (cells are disjoint, so
    /// pairwise intersection areas just add up).
    pub fn intersection_area(&self, other: &Region) -> Result<Rational, GeometryError> {
        let mut total = Rational::zero();
        for a in &self.cells {
            for b in &other.cells {
                if let Some(overlap) = a.intersect(b)? {
                    total += overlap.area();
                }
            }
        }
        Ok(total)
    }

    /// Zero-area symmetric difference: both areas equal the overlap area.
    pub fn same_up_to_zero_area(&self, other: &Region) -> Result<bool, GeometryError> {
        let a = self.area();
        if a != other.area() {
            return Ok(false);
        }
        Ok(self.intersection_area(other)? == a)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.cells
                .iter()
                .map(|cell| {
                    serde_json::Value::Array(
                        cell.vertices()
                            .iter()
                            .map(|v| {
                                serde_json::json!([
                                    [v.x.numer().to_string(), v.x.denom().to_string()],
                                    [v.y.numer().to_string(), v.y.denom().to_string()],
                                ])
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, String> {
        let cells_json = value.as_array().ok_or("region must be a JSON array")?;
        let mut cells = Vec::with_capacity(cells_json.len());
        for cell_json in cells_json {
            let verts_json = cell_json.as_array().ok_or("cell must be a JSON array")?;
            let mut vertices = Vec::with_capacity(verts_json.len());
            for v in verts_json {
                let pair = v.as_array().filter(|p| p.len() == 2).ok_or("vertex must be a pair")?;
                let x = parse_coord(&pair[0])?;
                let y = parse_coord(&pair[1])?;
                vertices.push(Point::new(x, y));
            }
            cells.push(ConvexPolygon::new(vertices).map_err(|e| e.to_string())?);
        }
        Region::new(cells).map_err(|e| e.to_string())
    }
}

fn parse_coord(value: &serde_json::Value) -> Result<Rational, String> {
    let pair = value
        .as_array()
        .filter(|p| p.len() == 2)
        .ok_or("coordinate must be [numer, denom]")?;
    let numer: BigInt = pair[0]
        .as_str()
        .ok_or("numerator must be a string")?
        .parse()
        .map_err(|_| "bad numerator".to_string())?;
    let denom: BigInt = pair[1]
        .as_str()
        .ok_or("denominator must be a string")?
        .parse()
        .map_err(|_| "bad denominator".to_string())?;
    if denom.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(numer, denom))
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        Region::from_json_value(&value).map_err(D::Error::custom)
    }
}

fn check_in_unit_square(cell: &ConvexPolygon) -> Result<(), GeometryError> {
    let zero = Rational::zero();
    let one = Rational::one();
    for v in cell.vertices() {
        if v.x < zero || v.x > one || v.y < zero || v.y > one {
            return Err(GeometryError::OutsideUnitSquare);
        }
    }
    Ok(())
}

/// Exact sum of cell areas (cells are disjoint by invariant).
pub fn region_area(r: &Region) -> Rational {
    r.area()
}

/// The non-attacking region `B` of a white region: the open unit square
/// minus the four attack strips of every white cell.
///
/// Sequential strip subtraction: each strip replaces every current cell by
/// its clip below the strip and its clip above it. The two pieces are
/// separated by the removed band, so disjointness is preserved inductively
/// and the cell count at most doubles per strip.
pub fn black_region(white: &Region) -> Result<Region, GeometryError> {
    for cell in white.cells() {
        check_in_unit_square(cell)?;
    }
    let mut cells = Region::unit_square().cells.clone();
    for wcell in white.cells() {
        for strip in wcell.attack_strips() {
            let [below, above] = strip.complement_halfplanes();
            let mut next = Vec::with_capacity(cells.len() * 2);
            for cell in &cells {
                if let Some(piece) = cell.clip(&below) {
                    next.push(piece);
                }
                if let Some(piece) = cell.clip(&above) {
                    next.push(piece);
                }
            }
            cells = next;
            if cells.is_empty() {
                break;
            }
        }
    }
    Ok(Region::from_disjoint_cells(cells))
}

/// True iff no black cell meets any white attack strip in positive area.
pub fn mutual_nonattack(white: &Region, black: &Region) -> bool {
    use super::HalfPlane;
    for wcell in white.cells() {
        for strip in wcell.attack_strips() {
            // Confining a cell to the closed strip keeps positive area iff
            // the open cell actually meets the strip.
            let ge_lo = HalfPlane::greater_than(strip.direction, strip.lo.clone());
            let le_hi = HalfPlane::less_than(strip.direction, strip.hi.clone());
            for bcell in black.cells() {
                let overlaps = match bcell.clip(&ge_lo) {
                    Some(part) => part.clip(&le_hi).is_some(),
                    None => false,
                };
                if overlaps {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{poly, pt};
    use super::*;
    use crate::rational::{format_rational, rat};

    fn corner_square_third() -> Region {
        Region::new(vec![poly(&[
            (0, 1, 0, 1),
            (1, 3, 0, 1),
            (1, 3, 1, 3),
            (0, 1, 1, 3),
        ])])
        .unwrap()
    }

    // Hand clipping: strips x,y in [0,1/3], sum in [0,2/3], diff in [-1/3,1/3]
    // leave two corner triangles of total area (1-2/3)^2 = 1/9.
    #[test]
    fn black_of_corner_square() {
        let b = black_region(&corner_square_third()).unwrap();
        assert_eq!(b.area(), rat(1, 9));
        assert_eq!(b.cells().len(), 2);
        let lower = poly(&[(2, 3, 1, 3), (1, 1, 1, 3), (1, 1, 2, 3)]);
        assert!(b
            .cells()
            .iter()
            .any(|c| c.canonical_rotation().vertices() == lower.canonical_rotation().vertices()));
        // The other cell is its mirror across y = x.
        let upper = poly(&[(1, 3, 2, 3), (2, 3, 1, 1), (1, 3, 1, 1)]);
        assert!(b
            .cells()
            .iter()
            .any(|c| c.canonical_rotation().vertices() == upper.canonical_rotation().vertices()));
    }

    #[test]
    fn black_of_corner_triangle_half() {
        let w = Region::new(vec![poly(&[(0, 1, 0, 1), (1, 2, 0, 1), (1, 2, 1, 2)])]).unwrap();
        let b = black_region(&w).unwrap();
        assert_eq!(b.area(), rat(1, 8));
        assert_eq!(b.cells().len(), 1);
    }

    #[test]
    fn black_of_empty_is_unit_square() {
        let b = black_region(&Region::empty()).unwrap();
        assert_eq!(b.area(), rat(1, 1));
    }

    #[test]
    fn white_outside_unit_square_is_domain_error() {
        let w = Region::from_disjoint_cells(vec![poly(&[
            (0, 1, 0, 1),
            (2, 1, 0, 1),
            (2, 1, 1, 1),
            (0, 1, 1, 1),
        ])]);
        assert_eq!(black_region(&w).unwrap_err(), GeometryError::OutsideUnitSquare);
        assert!(Region::new(w.cells().to_vec()).is_err());
    }

    #[test]
    fn region_area_empty_is_zero() {
        assert_eq!(region_area(&Region::empty()), rat(0, 1));
    }

    #[test]
    fn contains_open_interior_only() {
        let u = Region::unit_square();
        assert!(u.contains(&pt(1, 2, 1, 2)));
        assert!(!u.contains(&pt(0, 1, 1, 2)));
    }

    #[test]
    fn mutual_nonattack_examples() {
        let w = corner_square_third();
        let b = black_region(&w).unwrap();
        assert!(mutual_nonattack(&w, &b));
        assert!(mutual_nonattack(&w, &Region::empty()));

        // (0.6, 0.6) sits on the diagonal through the corner square.
        let bad = Region::new(vec![poly(&[
            (3, 5, 3, 5),
            (1, 1, 3, 5),
            (1, 1, 1, 1),
            (3, 5, 1, 1),
        ])])
        .unwrap();
        assert!(!mutual_nonattack(&w, &bad));
    }

    #[test]
    fn overlapping_cells_rejected() {
        let a = poly(&[(0, 1, 0, 1), (1, 2, 0, 1), (1, 2, 1, 2), (0, 1, 1, 2)]);
        let b = poly(&[(1, 4, 1, 4), (3, 4, 1, 4), (3, 4, 3, 4), (1, 4, 3, 4)]);
        assert_eq!(Region::new(vec![a, b]).unwrap_err(), GeometryError::OverlappingCells);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let w = corner_square_third();
        let json = serde_json::to_string(&w).unwrap();
        let back: Region = serde_json::from_str(&json).unwrap();
        assert_eq!(w, back);

        let b = black_region(&w).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        let back: Region = serde_json::from_str(&json).unwrap();
        assert_eq!(b.area(), back.area());
        assert_eq!(b.cells().len(), back.cells().len());
    }

    #[test]
    fn format_rational_helper() {
        assert_eq!(format_rational(&rat(7, 48)), "7/48");
        assert_eq!(format_rational(&rat(3, 1)), "3");
    }
}
