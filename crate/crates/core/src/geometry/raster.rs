//! Rasterized evaluation: exact membership of grid-cell centers.
//!
//! `raster_count(r, n)` counts centers `((i+1/2)/n, (j+1/2)/n)` lying in the
//! open interior of `r`. It is the float-free area oracle: the estimate
//! `count/n^2` converges to the exact area at rate `O(perimeter/n)`.

use super::Region;
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Number of grid centers inside the region, computed row by row: each cell
/// is sliced at the row height, and the center count in the open slice is a
/// pair of exact floor operations. Equivalent to `contains` at every center.
pub fn raster_count(region: &Region, n: u32) -> u64 {
    assert!(n >= 1, "grid must have at least one cell");
    center_rows(region, n)
        .into_iter()
        .map(|(_, _, count)| count)
        .sum()
}

/// Board cells `(col, row)` whose center lies in the region, row-major.
pub fn center_cells(region: &Region, n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut rows = center_rows(region, n);
    rows.sort_by_key(|&(row, lo, _)| (row, lo));
    for (row, i_lo, count) in rows {
        for k in 0..count {
            out.push((i_lo + k as u32, row));
        }
    }
    out
}

/// Per (cell, row) runs of covered centers: `(row, first_col, count)`.
/// Cells have disjoint interiors, so runs never overlap.
fn center_rows(region: &Region, n: u32) -> Vec<(u32, u32, u64)> {
    let big_n = Rational::from_integer(BigInt::from(n));
    let two = Rational::from_integer(BigInt::from(2));
    let mut runs = Vec::new();
    for cell in region.cells() {
        for row in 0..n {
            let y = (Rational::from_integer(BigInt::from(2 * row as i64 + 1))) / (&two * &big_n);
            let Some((xl, xr)) = cell.horizontal_slice(&y) else {
                continue;
            };
            // Centers (2i+1)/(2n) strictly inside (xl, xr):
            //   2n*xl < 2i+1 < 2n*xr.
            let lo = &two * &big_n * xl;
            let hi = &two * &big_n * xr;
            // Smallest integer strictly above (lo-1)/2 and largest strictly
            // below (hi-1)/2.
            let i_min = ((&lo - Rational::one()) / &two).floor() + Rational::one();
            let i_max = ((&hi - Rational::one()) / &two).ceil() - Rational::one();
            let i_min = i_min.to_integer().max(BigInt::zero());
            let i_max = i_max.to_integer().min(BigInt::from(n - 1));
            if i_min > i_max {
                continue;
            }
            let first = i_min.to_u32().expect("column fits in u32");
            let count = (&i_max - &i_min + BigInt::one()).to_u64().expect("count fits");
            runs.push((row, first, count));
        }
    }
    runs
}

/// Board cells whose full closed square lies inside the closure of a single
/// region cell (the conservative counting mode).
pub fn full_cells(region: &Region, n: u32) -> Vec<(u32, u32)> {
    use super::Point;
    let big_n = Rational::from_integer(BigInt::from(n));
    let mut out = Vec::new();
    for row in 0..n {
        for col in 0..n {
            let x0 = Rational::from_integer(BigInt::from(col)) / &big_n;
            let y0 = Rational::from_integer(BigInt::from(row)) / &big_n;
            let x1 = Rational::from_integer(BigInt::from(col + 1)) / &big_n;
            let y1 = Rational::from_integer(BigInt::from(row + 1)) / &big_n;
            let corners = [
                Point::new(x0.clone(), y0.clone()),
                Point::new(x1.clone(), y0),
                Point::new(x1, y1.clone()),
                Point::new(x0, y1),
            ];
            if region
                .cells()
                .iter()
                .any(|cell| corners.iter().all(|c| cell.contains_closed(c)))
            {
                out.push((col, row));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::testutil::poly;
    use super::super::{black_region, Region};
    use super::*;
    use crate::rational::{rat, to_f64};

    #[test]
    fn unit_square_n10_is_100() {
        assert_eq!(raster_count(&Region::unit_square(), 10), 100);
    }

    // Oracle: direct center membership, straight from the definition.
    fn naive_count(region: &Region, n: u32) -> u64 {
        use super::super::Point;
        let mut count = 0;
        for j in 0..n {
            for i in 0..n {
                let p = Point::new(
                    rat(2 * i as i64 + 1, 2 * n as i64),
                    rat(2 * j as i64 + 1, 2 * n as i64),
                );
                if region.contains(&p) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn slicing_matches_naive_membership() {
        let w = Region::new(vec![poly(&[
            (0, 1, 0, 1),
            (1, 2, 0, 1),
            (1, 2, 1, 2),
        ])])
        .unwrap();
        let b = black_region(&w).unwrap();
        for n in [7, 12, 60] {
            assert_eq!(raster_count(&w, n), naive_count(&w, n));
            assert_eq!(raster_count(&b, n), naive_count(&b, n));
        }
        // Centers exactly on a boundary line are excluded by both paths:
        // n even puts centers on x = 1/2 nowhere, n odd does at i=(n-1)/2.
        let sq = Region::new(vec![poly(&[
            (0, 1, 0, 1),
            (1, 2, 0, 1),
            (1, 2, 1, 1),
            (0, 1, 1, 1),
        ])])
        .unwrap();
        for n in [5, 9] {
            assert_eq!(raster_count(&sq, n), naive_count(&sq, n));
        }
    }

    #[test]
    fn corner_triangle_raster_converges() {
        let w = Region::new(vec![poly(&[
            (0, 1, 0, 1),
            (1, 2, 0, 1),
            (1, 2, 1, 2),
        ])])
        .unwrap();
        let n = 120u32;
        let estimate = raster_count(&w, n) as f64 / (n as f64 * n as f64);
        assert!((estimate - 0.125).abs() <= 1.0 / n as f64);
    }

    #[test]
    fn center_cells_count_matches_raster() {
        let w = Region::new(vec![poly(&[
            (0, 1, 0, 1),
            (1, 3, 0, 1),
            (1, 3, 1, 3),
            (0, 1, 1, 3),
        ])])
        .unwrap();
        let cells = center_cells(&w, 30);
        assert_eq!(cells.len() as u64, raster_count(&w, 30));
        assert!(cells.iter().all(|&(i, j)| i < 30 && j < 30));
    }

    #[test]
    fn full_cells_are_a_subset_of_center_cells() {
        let w = Region::new(vec![poly(&[
            (0, 1, 0, 1),
            (1, 3, 0, 1),
            (1, 3, 1, 3),
            (0, 1, 1, 3),
        ])])
        .unwrap();
        let centers: std::collections::BTreeSet<_> = center_cells(&w, 12).into_iter().collect();
        let full: Vec<_> = full_cells(&w, 12);
        assert!(!full.is_empty());
        assert!(full.iter().all(|c| centers.contains(c)));
        let area = to_f64(&w.area());
        assert!((full.len() as f64) / 144.0 <= area);
    }
}
