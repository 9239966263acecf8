//! Smith normal form with transforms.
//!
//! Pivot rule: the nonzero entry of least absolute value in the active block,
//! ties broken by lowest row and then lowest column. Elimination uses truncated
//! division, so a nonzero remainder is always strictly smaller than the pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal, `d[i] | d[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntegerMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries d_1, ..., d_min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn find_pivot(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut u_inv = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);
    let mut v_inv = IntegerMatrix::identity(n);

    // row op: row[dst] += k * row[src]; the inverse picks up col[src] -= k * col[dst]
    let row_op =
        |d: &mut IntegerMatrix, u: &mut IntegerMatrix, ui: &mut IntegerMatrix, dst: usize, src: usize, k: &BigInt| {
            d.add_row_multiple(dst, src, k);
            u.add_row_multiple(dst, src, k);
            ui.add_col_multiple(src, dst, &-k);
        };
    let col_op =
        |d: &mut IntegerMatrix, v: &mut IntegerMatrix, vi: &mut IntegerMatrix, dst: usize, src: usize, k: &BigInt| {
            d.add_col_multiple(dst, src, k);
            v.add_col_multiple(dst, src, k);
            vi.add_row_multiple(src, dst, &-k);
        };

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                break;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                row_op(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                col_op(&mut d, &mut v, &mut v_inv, j, t, &-q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    row_op(&mut d, &mut u, &mut u_inv, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SmithDecomposition { u, d, v, u_inv, v_inv }
}
