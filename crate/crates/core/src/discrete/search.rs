//! Exact peaceable-queens values for small boards by branch-and-bound over
//! white subsets.
//!
//! Black never constrains white (only white-vs-black attacks matter), so
//! the search ranges over white sets only and scores each node with
//! min(|W|, #non-attacked). Pruning: the count bound
//! min(|W| + remaining cells, current free count) against the incumbent,
//! plus dihedral symmetry reduction at the first placed queen. White may
//! attack white; no legality pruning beyond the bound.

use super::DiscreteError;

/// Boards up to 7x7 fit the single-word bitboard and a sane time budget;
/// n = 7 is best-effort and sits behind an explicit CLI flag.
pub const MAX_EXACT_N: u32 = 7;

struct Searcher {
    n2: u32,
    masks: Vec<u64>,
    first_allowed: Vec<bool>,
    best: u32,
    best_set: Vec<u32>,
    stack: Vec<u32>,
}

impl Searcher {
    fn dfs(&mut self, idx: u32, placed: u32, attacked: u64) {
        let free = self.n2 - attacked.count_ones();
        let value = placed.min(free);
        if value > self.best {
            self.best = value;
            self.best_set = self.stack.clone();
        }
        if idx == self.n2 {
            return;
        }
        let remaining = self.n2 - idx;
        if (placed + remaining).min(free) <= self.best {
            return;
        }
        if placed > 0 || self.first_allowed[idx as usize] {
            self.stack.push(idx);
            self.dfs(idx + 1, placed + 1, attacked | self.masks[idx as usize]);
            self.stack.pop();
        }
        self.dfs(idx + 1, placed, attacked);
    }
}

fn attack_mask(col: u32, row: u32, n: u32) -> u64 {
    let mut mask = 0u64;
    for r in 0..n {
        for c in 0..n {
            let aligned = c == col
                || r == row
                || c as i64 - r as i64 == col as i64 - row as i64
                || c + r == col + row;
            if aligned {
                mask |= 1u64 << (r * n + c);
            }
        }
    }
    mask
}

/// Cells that are row-major minimal within their dihedral orbit. Any
/// lexicographically canonical white set starts with one of these, so the
/// first placement can be restricted to them without losing the optimum.
fn first_placement_cells(n: u32) -> Vec<bool> {
    let m = n - 1;
    let index = |x: u32, y: u32| y * n + x;
    (0..n * n)
        .map(|i| {
            let (x, y) = (i % n, i / n);
            let orbit = [
                (x, y),
                (y, x),
                (x, m - y),
                (m - x, y),
                (m - x, m - y),
                (y, m - x),
                (m - y, x),
                (m - y, m - x),
            ];
            orbit.iter().all(|&(ox, oy)| index(ox, oy) >= i)
        })
        .collect()
}

/// Exact maximum of min(|white|, #non-attacked) over all white subsets.
pub fn exact_peaceable(n: u32) -> Result<u32, DiscreteError> {
    exact_peaceable_with_witness(n).map(|(value, _)| value)
}

/// Exact value plus one optimal white set.
pub fn exact_peaceable_with_witness(n: u32) -> Result<(u32, Vec<(u32, u32)>), DiscreteError> {
    if n == 0 || n > MAX_EXACT_N {
        return Err(DiscreteError::UnsupportedSize(n, MAX_EXACT_N));
    }
    let n2 = n * n;
    let masks: Vec<u64> = (0..n2).map(|i| attack_mask(i % n, i / n, n)).collect();
    let mut searcher = Searcher {
        n2,
        masks,
        first_allowed: first_placement_cells(n),
        best: 0,
        best_set: Vec::new(),
        stack: Vec::new(),
    };
    searcher.dfs(0, 0, 0);
    let witness = searcher
        .best_set
        .iter()
        .map(|&i| (i % n, i / n))
        .collect();
    Ok((searcher.best, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{peace_value, KNOWN_TERMS};

    #[test]
    fn matches_known_terms_up_to_five() {
        for n in 1..=5u32 {
            assert_eq!(
                exact_peaceable(n).unwrap(),
                KNOWN_TERMS[(n - 1) as usize],
                "n = {n}"
            );
        }
    }

    #[test]
    fn six_by_six_is_five() {
        assert_eq!(exact_peaceable(6).unwrap(), 5);
    }

    #[test]
    fn seven_by_seven_is_seven() {
        assert_eq!(exact_peaceable(7).unwrap(), KNOWN_TERMS[6]);
    }

    #[test]
    fn witness_realizes_the_value() {
        for n in 3..=6u32 {
            let (value, white) = exact_peaceable_with_witness(n).unwrap();
            assert_eq!(peace_value(&white, n).unwrap(), value as u64);
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(exact_peaceable(0).is_err());
        assert!(exact_peaceable(8).is_err());
    }
}
