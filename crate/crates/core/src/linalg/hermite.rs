//! Row-style Hermite normal form; the canonical representative used for every
//! sublattice the library hands back.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// Hermite normal form of the row span of `a`, zero rows dropped.
///
/// Pivots are positive, strictly move right, and entries above a pivot lie in `[0, pivot)`.
/// Two matrices have the same output iff their rows span the same lattice.
pub fn hermite_rows(a: &IntegerMatrix) -> IntegerMatrix {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if m[(b, c)].abs() <= m[(i, c)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = &m[(i, c)] / &m[(r, c)];
                m.add_row_multiple(i, r, &-q);
                if !m[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[(r, c)].is_zero() {
            continue;
        }
        if m[(r, c)].is_negative() {
            m.negate_row(r);
        }
        for i in 0..r {
            let q = m[(i, c)].div_floor(&m[(r, c)]);
            m.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    m.rows_range(0, r)
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `a`.
pub fn canonical_basis(a: &IntegerMatrix) -> IntegerMatrix {
    hermite_rows(&a.transpose()).transpose_with_rows(a.rows())
}

impl IntegerMatrix {
    /// Transpose that keeps the row count even when there are no columns.
    pub(crate) fn transpose_with_rows(&self, dim: usize) -> IntegerMatrix {
        if self.rows() == 0 {
            IntegerMatrix::zeros(dim, 0)
        } else {
            self.transpose()
        }
    }
}

/// Pivot column of each row of a Hermite form.
pub fn pivot_columns(h: &IntegerMatrix) -> Vec<usize> {
    (0..h.rows())
        .map(|i| {
            (0..h.cols())
                .find(|&j| !h[(i, j)].is_zero())
                .expect("zero row in Hermite form")
        })
        .collect()
}

/// Product of the pivots; for a full-rank sublattice of Z^n this is its index.
pub fn pivot_product(h: &IntegerMatrix) -> BigInt {
    pivot_columns(h)
        .iter()
        .enumerate()
        .map(|(i, &j)| h[(i, j)].clone())
        .product()
}
