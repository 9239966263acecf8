//! Exact integer linear algebra: Smith and Hermite forms, kernels, cokernels,
//! saturation and integer solving. Sublattices of `Z^n` are passed around as
//! matrices whose columns generate them.

mod abgroup;
mod hermite;
mod matrix;
mod smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use abgroup::FinAbGroup;
pub use hermite::{canonical_basis, hermite_rows, pivot_columns, pivot_product};
pub use matrix::{dot, ivec, vec_content, IntegerMatrix};
pub use smith::{smith_normal_form, SmithDecomposition};

use crate::error::{Error, Result};

pub fn rank(a: &IntegerMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Saturated basis of `{x : a x = 0}`, in canonical form.
pub fn kernel_basis(a: &IntegerMatrix) -> IntegerMatrix {
    let s = smith_normal_form(a);
    let r = s.rank();
    canonical_basis(&s.v.columns_range(r, a.cols()))
}

/// Isomorphism type of `Z^rows / colspan(a)`.
pub fn cokernel_structure(a: &IntegerMatrix) -> FinAbGroup {
    let s = smith_normal_form(a);
    let diag = s.diagonal();
    FinAbGroup::from_smith_diagonal(&diag, a.rows() - diag.len())
}

/// Canonical basis of the primitive closure of the column span.
pub fn saturate(b: &IntegerMatrix) -> Result<IntegerMatrix> {
    let s = smith_normal_form(b);
    let r = s.rank();
    if r < b.cols() {
        return Err(Error::RankDeficient {
            rank: r,
            cols: b.cols(),
        });
    }
    Ok(canonical_basis(&s.u_inv.columns_range(0, r)))
}

/// Saturation of the span of arbitrary (possibly dependent) generators.
pub fn saturate_span(b: &IntegerMatrix) -> IntegerMatrix {
    let s = smith_normal_form(b);
    canonical_basis(&s.u_inv.columns_range(0, s.rank()))
}

/// Some integer `x` with `a x = b`, or `None`.
pub fn solve_integer(a: &IntegerMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let s = smith_normal_form(a);
    Ok(solve_with(&s, b))
}

fn solve_with(s: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = s.u.mul_vec(b).expect("shape checked");
    let diag = s.diagonal();
    let n = s.v.rows();
    let mut y = vec![BigInt::zero(); n];
    for (i, ci) in c.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(s.v.mul_vec(&y).expect("shape checked"))
}

/// Integer `X` with `a X = b`, or `None` if some column has no solution.
pub fn solve_matrix(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<Option<IntegerMatrix>> {
    if b.rows() != a.rows() {
        return Err(Error::Shape(format!(
            "right-hand side with {} rows for {} rows",
            b.rows(),
            a.rows()
        )));
    }
    let s = smith_normal_form(a);
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve_with(&s, &b.column(j)) {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(IntegerMatrix::from_columns(&cols, a.cols())?))
}

/// Whether every column of `v` lies in the span of the columns of `basis`.
pub fn span_contains(basis: &IntegerMatrix, v: &IntegerMatrix) -> bool {
    matches!(solve_matrix(basis, v), Ok(Some(_)))
}

pub fn same_span(a: &IntegerMatrix, b: &IntegerMatrix) -> bool {
    a.rows() == b.rows() && canonical_basis(a) == canonical_basis(b)
}

pub fn lattice_sum(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<IntegerMatrix> {
    Ok(canonical_basis(&a.hstack(b)?))
}

/// Canonical basis of `colspan(a) ∩ colspan(b)`.
pub fn lattice_intersection(a: &IntegerMatrix, b: &IntegerMatrix) -> Result<IntegerMatrix> {
    let stacked = a.hstack(&-b)?;
    let k = kernel_basis(&stacked);
    let top = k.rows_range(0, a.cols());
    Ok(canonical_basis(&a.checked_mul(&top)?))
}

/// Structure of `colspan(sup) / colspan(sub)`; errors unless `sub ⊆ sup`.
pub fn quotient_structure(sup: &IntegerMatrix, sub: &IntegerMatrix) -> Result<FinAbGroup> {
    let basis = canonical_basis(sup);
    let coords = solve_matrix(&basis, sub)?
        .ok_or_else(|| Error::Precondition("sublattice is not contained in the ambient lattice".into()))?;
    Ok(cokernel_structure(&coords))
}

/// Coordinates of the columns of `v` in the basis `basis` (independent columns).
pub fn coordinates(basis: &IntegerMatrix, v: &IntegerMatrix) -> Result<IntegerMatrix> {
    solve_matrix(basis, v)?.ok_or_else(|| Error::Precondition("vectors do not lie in the given lattice".into()))
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    if !a.is_unimodular() {
        return Err(Error::Precondition("matrix is not unimodular".into()));
    }
    coordinates(a, &IntegerMatrix::identity(a.rows()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64(rows)
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(&[&[1, 1], &[1, 1]])).to_columns(), vec![ivec(&[1, -1])]);
        assert_eq!(kernel_basis(&IntegerMatrix::identity(3)).cols(), 0);
        let swap_minus_id = m(&[&[-1, 1], &[1, -1]]);
        assert_eq!(kernel_basis(&swap_minus_id).to_columns(), vec![ivec(&[1, 1])]);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_structure(&m(&[&[2, 0], &[0, 3]])), FinAbGroup::cyclic(6));
        assert!(cokernel_structure(&IntegerMatrix::identity(4)).is_trivial());
        assert_eq!(cokernel_structure(&m(&[&[1, 4], &[4, 1]])), FinAbGroup::cyclic(15));
        assert_eq!(cokernel_structure(&IntegerMatrix::zeros(2, 0)), FinAbGroup::free(2));
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&m(&[&[2], &[0]])).unwrap().to_columns(), vec![ivec(&[1, 0])]);
        assert_eq!(saturate(&m(&[&[1, 1], &[1, -1]])).unwrap(), IntegerMatrix::identity(2));
        let b = m(&[&[1, 0], &[2, 1], &[0, 3]]);
        assert_eq!(saturate(&b).unwrap(), canonical_basis(&b));
        assert_eq!(
            saturate(&m(&[&[1, 2], &[1, 2]])),
            Err(Error::RankDeficient { rank: 1, cols: 2 })
        );
    }

    #[test]
    fn solve_examples() {
        let b = ivec(&[3, -7, 2]);
        assert_eq!(solve_integer(&IntegerMatrix::identity(3), &b).unwrap(), Some(b));
        assert_eq!(solve_integer(&m(&[&[2]]), &ivec(&[1])).unwrap(), None);
        assert_eq!(
            solve_integer(&m(&[&[1, 4], &[4, 1]]), &ivec(&[5, 5])).unwrap(),
            Some(ivec(&[1, 1]))
        );
        // inconsistent over Q
        assert_eq!(solve_integer(&m(&[&[1], &[1]]), &ivec(&[1, 2])).unwrap(), None);
    }

    #[test]
    fn intersection_and_quotient() {
        let a = m(&[&[2, 0], &[0, 1]]);
        let b = m(&[&[1, 0], &[0, 3]]);
        let i = lattice_intersection(&a, &b).unwrap();
        assert!(same_span(&i, &m(&[&[2, 0], &[0, 3]])));
        assert_eq!(
            quotient_structure(&IntegerMatrix::identity(2), &i).unwrap(),
            FinAbGroup::cyclic(6)
        );
        assert!(quotient_structure(&a, &IntegerMatrix::identity(2)).is_err());
    }

    fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = IntegerMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            prop::collection::vec(-5i64..6, r * c)
                .prop_map(move |v| IntegerMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_rank_nullity(a in matrix(4, 5)) {
            let k = kernel_basis(&a);
            prop_assert!((&a * &k).is_zero());
            prop_assert_eq!(k.cols() + rank(&a), a.cols());
            // saturated: the quotient Z^n / ker is torsion-free
            prop_assert!(cokernel_structure(&k).invariant_factors.is_empty());
        }

        #[test]
        fn cokernel_order_is_abs_det(a in matrix(4, 4)) {
            prop_assume!(a.is_square());
            let det = a.determinant().unwrap();
            let g = cokernel_structure(&a);
            if det.is_zero() {
                prop_assert!(g.free_rank > 0);
            } else {
                prop_assert_eq!(g.order().unwrap(), det.abs());
            }
        }

        #[test]
        fn saturation_idempotent_monotone_torsion_free(a in matrix(5, 3)) {
            prop_assume!(rank(&a) == a.cols());
            let s = saturate(&a).unwrap();
            prop_assert_eq!(saturate(&s).unwrap(), s.clone());
            prop_assert!(span_contains(&s, &a));
            prop_assert!(cokernel_structure(&s).invariant_factors.is_empty());
            prop_assert_eq!(s.cols(), a.cols());
        }

        #[test]
        fn solve_finds_preimages(a in matrix(4, 4), x in prop::collection::vec(-5i64..6, 4)) {
            let x: Vec<BigInt> = x.into_iter().take(a.cols()).map(BigInt::from).collect();
            prop_assume!(x.len() == a.cols());
            let b = a.mul_vec(&x).unwrap();
            let sol = solve_integer(&a, &b).unwrap().expect("solution exists");
            prop_assert_eq!(a.mul_vec(&sol).unwrap(), b);
        }
    }
}
