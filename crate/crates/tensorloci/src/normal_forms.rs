//! The 26 orbit representatives of `ℂ²⊗ℂ³⊗ℂⁿ` and the W-state family.
//!
//! Indices are 0-based: the entry `(1, 0, 1)` is the coefficient of
//! `e₂⊗e₁⊗e₂`.

use crate::exactnum::{q, Q};
use crate::tensorcore::Tensor;

struct Row {
    shape: [usize; 3],
    entries: &'static [[usize; 3]],
    border_rank: usize,
    rank: usize,
}

const ROWS: [Row; 26] = [
    Row { shape: [2, 2, 2], entries: &[[0, 0, 0]], border_rank: 1, rank: 1 },
    Row { shape: [2, 2, 2], entries: &[[0, 0, 0], [1, 1, 0]], border_rank: 2, rank: 2 },
    Row { shape: [2, 2, 2], entries: &[[0, 0, 0], [0, 1, 1]], border_rank: 2, rank: 2 },
    Row { shape: [2, 2, 2], entries: &[[0, 0, 0], [1, 0, 1]], border_rank: 2, rank: 2 },
    Row { shape: [2, 2, 2], entries: &[[0, 0, 0], [0, 1, 1], [1, 0, 1]], border_rank: 2, rank: 3 },
    Row { shape: [2, 2, 2], entries: &[[0, 0, 0], [1, 1, 1]], border_rank: 2, rank: 2 },
    Row { shape: [2, 2, 3], entries: &[[0, 0, 0], [0, 1, 2], [1, 0, 1]], border_rank: 3, rank: 3 },
    Row { shape: [2, 2, 3], entries: &[[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 2]], border_rank: 3, rank: 3 },
    Row { shape: [2, 2, 4], entries: &[[0, 0, 0], [0, 1, 2], [1, 0, 1], [1, 1, 3]], border_rank: 4, rank: 4 },
    Row { shape: [2, 3, 3], entries: &[[0, 0, 0], [0, 1, 1], [0, 2, 2]], border_rank: 3, rank: 3 },
    Row { shape: [2, 3, 2], entries: &[[0, 0, 0], [0, 2, 1], [1, 1, 0]], border_rank: 3, rank: 3 },
    Row { shape: [2, 3, 2], entries: &[[0, 0, 0], [0, 1, 1], [1, 1, 0], [1, 2, 1]], border_rank: 3, rank: 3 },
    Row { shape: [2, 3, 3], entries: &[[0, 0, 0], [0, 1, 2], [1, 0, 1], [1, 2, 2]], border_rank: 3, rank: 4 },
    Row { shape: [2, 3, 3], entries: &[[0, 0, 0], [0, 1, 1], [1, 2, 2]], border_rank: 3, rank: 3 },
    Row { shape: [2, 3, 3], entries: &[[0, 0, 0], [0, 1, 1], [0, 2, 2], [1, 0, 1]], border_rank: 3, rank: 4 },
    Row {
        shape: [2, 3, 3],
        entries: &[[0, 0, 0], [0, 1, 1], [0, 2, 2], [1, 0, 1], [1, 1, 2]],
        border_rank: 3,
        rank: 4,
    },
    Row { shape: [2, 3, 3], entries: &[[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 2, 2]], border_rank: 3, rank: 4 },
    Row { shape: [2, 3, 3], entries: &[[0, 0, 0], [0, 1, 1], [1, 1, 1], [1, 2, 2]], border_rank: 3, rank: 3 },
    Row {
        shape: [2, 3, 4],
        entries: &[[0, 0, 0], [0, 1, 1], [0, 2, 3], [1, 0, 1], [1, 1, 2]],
        border_rank: 4,
        rank: 4,
    },
    Row { shape: [2, 3, 4], entries: &[[0, 0, 0], [0, 1, 2], [0, 2, 3], [1, 0, 1]], border_rank: 4, rank: 4 },
    Row {
        shape: [2, 3, 4],
        entries: &[[0, 0, 0], [0, 1, 2], [0, 2, 3], [1, 0, 1], [1, 1, 3]],
        border_rank: 4,
        rank: 5,
    },
    Row { shape: [2, 3, 4], entries: &[[0, 0, 0], [0, 1, 2], [1, 0, 1], [1, 2, 3]], border_rank: 4, rank: 4 },
    Row {
        shape: [2, 3, 4],
        entries: &[[0, 0, 0], [0, 1, 1], [0, 2, 2], [1, 0, 1], [1, 1, 2], [1, 2, 3]],
        border_rank: 4,
        rank: 4,
    },
    Row {
        shape: [2, 3, 5],
        entries: &[[0, 0, 0], [0, 1, 2], [0, 2, 4], [1, 0, 1], [1, 1, 3]],
        border_rank: 5,
        rank: 5,
    },
    Row {
        shape: [2, 3, 5],
        entries: &[[0, 0, 0], [0, 1, 1], [0, 2, 3], [1, 0, 1], [1, 1, 2], [1, 2, 4]],
        border_rank: 5,
        rank: 5,
    },
    Row {
        shape: [2, 3, 6],
        entries: &[[0, 0, 0], [0, 1, 2], [0, 2, 4], [1, 0, 1], [1, 1, 3], [1, 2, 5]],
        border_rank: 6,
        rank: 6,
    },
];

fn row(n: u8) -> &'static Row {
    assert!((1..=26).contains(&n), "orbit number {n} outside 1..=26");
    &ROWS[n as usize - 1]
}

/// Representative of orbit `n` in its own ambient shape.
pub fn normal_form(n: u8) -> Tensor<Q> {
    let r = row(n);
    let e: Vec<(Vec<usize>, Q)> = r.entries.iter().map(|i| (i.to_vec(), q(1))).collect();
    Tensor::from_entries(&r.shape, &e)
}

/// Ambient shape of the representative.
pub fn normal_form_shape(n: u8) -> [usize; 3] {
    row(n).shape
}

/// `(border rank, rank)` of orbit `n`.
pub fn rank_pair(n: u8) -> (usize, usize) {
    let r = row(n);
    (r.border_rank, r.rank)
}

/// `Σ_i e₁⊗⋯⊗e₂⊗⋯⊗e₁` (one `e₂` in position i) in `(ℂ²)^{⊗k}`; tangent to
/// the Segre variety at `e₁⊗⋯⊗e₁`.
pub fn w_state(k: usize) -> Tensor<Q> {
    let shape = vec![2; k];
    let entries: Vec<(Vec<usize>, Q)> = (0..k)
        .map(|i| {
            let mut idx = vec![0; k];
            idx[i] = 1;
            (idx, q(1))
        })
        .collect();
    Tensor::from_entries(&shape, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_consistency() {
        for n in 1..=26u8 {
            let (b, r) = rank_pair(n);
            assert!(b <= r && r - b <= 1, "orbit {n}");
            assert_eq!(normal_form(n).shape(), &normal_form_shape(n));
        }
        assert_eq!(w_state(3).get(&[0, 0, 1]), &q(1));
        assert_eq!(w_state(3).get(&[0, 0, 0]), &q(0));
    }
}
