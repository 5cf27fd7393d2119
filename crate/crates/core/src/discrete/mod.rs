//! Exact n x n chessboard model: attack masks, peace values, and the
//! brute-force solver for small boards.
//!
//! Cells are `(col, row)` pairs with the origin at the bottom-left; a queen
//! occupies its row, column, diagonal (`col - row` constant) and
//! anti-diagonal (`col + row` constant). Only white-vs-black attacks are
//! constrained, so for a fixed white set the best black set is exactly the
//! set of non-attacked cells.

mod bridge;
mod search;

pub use bridge::{evaluate_construction, CellMode, ConstructionCounts};
pub use search::{exact_peaceable, exact_peaceable_with_witness, MAX_EXACT_N};

use serde::Serialize;
use thiserror::Error;

/// The thirteen known terms of the peaceable-queens sequence, a(1..=13).
pub const KNOWN_TERMS: [u32; 13] = [0, 0, 1, 2, 4, 5, 7, 9, 12, 14, 17, 21, 24];

/// Conjectured asymptotic value floor(7 n^2 / 48).
pub fn seven_n2_over_48(n: u32) -> u64 {
    (7 * n as u64 * n as u64) / 48
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscreteError {
    #[error("board size {0} outside supported range 1..={1}")]
    UnsupportedSize(u32, u32),
    #[error("cell ({0}, {1}) outside the board")]
    CellOutsideBoard(u32, u32),
    #[error("white and black cells must be disjoint")]
    OverlappingArmies,
    #[error("a black cell lies on a line occupied by white")]
    BlackAttacked,
}

/// Dense bitset over board cells, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGrid {
    n: u32,
    blocks: Vec<u64>,
}

impl BitGrid {
    pub fn new(n: u32) -> Self {
        let bits = (n as usize) * (n as usize);
        BitGrid { n, blocks: vec![0; bits.div_ceil(64)] }
    }

    fn index(&self, col: u32, row: u32) -> usize {
        (row * self.n + col) as usize
    }

    pub fn set(&mut self, col: u32, row: u32) {
        let i = self.index(col, row);
        self.blocks[i / 64] |= 1u64 << (i % 64);
    }

    pub fn contains(&self, col: u32, row: u32) -> bool {
        let i = self.index(col, row);
        self.blocks[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn count(&self) -> u64 {
        self.blocks.iter().map(|b| b.count_ones() as u64).sum()
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

fn check_cells(cells: &[(u32, u32)], n: u32) -> Result<(), DiscreteError> {
    for &(c, r) in cells {
        if c >= n || r >= n {
            return Err(DiscreteError::CellOutsideBoard(c, r));
        }
    }
    Ok(())
}

/// Union of all cells sharing a row, column, diagonal or anti-diagonal with
/// any white cell (white cells included).
pub fn attacked_cells(white_cells: &[(u32, u32)], n: u32) -> Result<BitGrid, DiscreteError> {
    check_cells(white_cells, n)?;
    let occ = LineOccupancy::from_cells(white_cells, n);
    let mut grid = BitGrid::new(n);
    for row in 0..n {
        for col in 0..n {
            if occ.attacks(col, row) {
                grid.set(col, row);
            }
        }
    }
    Ok(grid)
}

/// min(|white|, #non-attacked cells): the peace value of a white set when
/// black greedily takes every cell white cannot see.
pub fn peace_value(white_cells: &[(u32, u32)], n: u32) -> Result<u64, DiscreteError> {
    let attacked = attacked_cells(white_cells, n)?;
    let free = (n as u64 * n as u64) - attacked.count();
    Ok((white_cells.len() as u64).min(free))
}

/// Row/column/diagonal occupancy flags for a set of queens.
#[derive(Debug, Clone)]
pub struct LineOccupancy {
    n: u32,
    rows: Vec<bool>,
    cols: Vec<bool>,
    diags: Vec<bool>,
    antis: Vec<bool>,
}

impl LineOccupancy {
    pub fn from_cells(cells: &[(u32, u32)], n: u32) -> Self {
        let mut occ = LineOccupancy {
            n,
            rows: vec![false; n as usize],
            cols: vec![false; n as usize],
            diags: vec![false; (2 * n - 1) as usize],
            antis: vec![false; (2 * n - 1) as usize],
        };
        for &(c, r) in cells {
            occ.cols[c as usize] = true;
            occ.rows[r as usize] = true;
            occ.diags[(c + n - 1 - r) as usize] = true;
            occ.antis[(c + r) as usize] = true;
        }
        occ
    }

    pub fn attacks(&self, col: u32, row: u32) -> bool {
        self.cols[col as usize]
            || self.rows[row as usize]
            || self.diags[(col + self.n - 1 - row) as usize]
            || self.antis[(col + row) as usize]
    }
}

/// An n x n board with both armies placed, upholding the non-attack
/// invariant between them.
#[derive(Debug, Clone, Serialize)]
pub struct Board {
    pub n: u32,
    pub white: Vec<(u32, u32)>,
    pub black: Vec<(u32, u32)>,
}

impl Board {
    pub fn new(n: u32, white: Vec<(u32, u32)>, black: Vec<(u32, u32)>) -> Result<Self, DiscreteError> {
        check_cells(&white, n)?;
        check_cells(&black, n)?;
        let wset: std::collections::BTreeSet<_> = white.iter().collect();
        if black.iter().any(|c| wset.contains(c)) {
            return Err(DiscreteError::OverlappingArmies);
        }
        let occ = LineOccupancy::from_cells(&white, n);
        if black.iter().any(|&(c, r)| occ.attacks(c, r)) {
            return Err(DiscreteError::BlackAttacked);
        }
        Ok(Board { n, white, black })
    }

    /// White set plus the full complement of non-attacked cells as black.
    pub fn with_greedy_black(n: u32, white: Vec<(u32, u32)>) -> Result<Self, DiscreteError> {
        let attacked = attacked_cells(&white, n)?;
        let mut black = Vec::new();
        for row in 0..n {
            for col in 0..n {
                if !attacked.contains(col, row) {
                    black.push((col, row));
                }
            }
        }
        Board::new(n, white, black)
    }

    /// ASCII snapshot, top row first: W white, B black, dot empty.
    pub fn ascii(&self) -> String {
        let mut grid = vec![vec!['.'; self.n as usize]; self.n as usize];
        for &(c, r) in &self.white {
            grid[r as usize][c as usize] = 'W';
        }
        for &(c, r) in &self.black {
            grid[r as usize][c as usize] = 'B';
        }
        let mut out = String::new();
        for row in grid.iter().rev() {
            out.extend(row.iter());
            out.push('\n');
        }
        out
    }
}
