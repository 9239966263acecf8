//! Splitting a free G-module into regular, trivial and sign summands.
//!
//! With B = ker(σ−1) and P = ker(σ+1), Λ/(B ⊕ P) is an F₂-space of dimension
//! r0, and x ↦ (1−σ)x, x ↦ (1+σ)x embed it into P/2P and B/2B. Pick lifts
//! y₁..y_r0 of a basis. Moving y by P changes (1−σ)y by 2P and leaves (1+σ)y
//! alone (and symmetrically for B), so the y can be fixed so that (1−σ)y
//! extends to a basis of P and (1+σ)y to a basis of B. Then the y, σy
//! together with the two completions form an adapted basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::FreeGModule;
use crate::error::{Error, Result};
use crate::linalg::{coordinates, kernel_basis, smith_normal_form, IntegerMatrix};

/// `(r0, r_plus, r_minus)` together with a unimodular change of basis `C` such
/// that `C⁻¹ σ C` is the canonical block form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GModuleDecomposition {
    pub r0: usize,
    pub r_plus: usize,
    pub r_minus: usize,
    /// Columns: q₁, σq₁, ..., q_r0, σq_r0, then invariant vectors, then anti-invariant vectors.
    pub adapted_basis: IntegerMatrix,
}

impl GModuleDecomposition {
    pub fn rank(&self) -> usize {
        2 * self.r0 + self.r_plus + self.r_minus
    }

    /// e.g. `Z[G]^3 ⊕ Z₊^2`.
    pub fn type_string(&self) -> String {
        type_string(self.r0, self.r_plus, self.r_minus)
    }
}

pub fn type_string(r0: usize, r_plus: usize, r_minus: usize) -> String {
    let term = |name: &str, k: usize| match k {
        0 => None,
        1 => Some(name.to_string()),
        k => Some(format!("{}^{}", name, k)),
    };
    let parts: Vec<String> = [term("Z[G]", r0), term("Z₊", r_plus), term("Z₋", r_minus)]
        .into_iter()
        .flatten()
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

/// r0 swap blocks, then r_plus entries +1, then r_minus entries −1.
pub fn canonical_block_form(r0: usize, r_plus: usize, r_minus: usize) -> IntegerMatrix {
    let n = 2 * r0 + r_plus + r_minus;
    let mut m = IntegerMatrix::zeros(n, n);
    for k in 0..r0 {
        m[(2 * k, 2 * k + 1)] = BigInt::one();
        m[(2 * k + 1, 2 * k)] = BigInt::one();
    }
    for i in 2 * r0..2 * r0 + r_plus {
        m[(i, i)] = BigInt::one();
    }
    for i in 2 * r0 + r_plus..n {
        m[(i, i)] = -BigInt::one();
    }
    m
}

fn internal(msg: &str) -> Error {
    Error::Internal(format!("decomposition: {}", msg))
}

/// Unimodular `G` whose first `r` columns agree with `c` (m×r, columns
/// independent mod 2) modulo 2. Built from a permuted LU factorization over
/// F₂: 0/1 lifts of unitriangular factors are unimodular over Z.
fn completion_mod_two(c: &IntegerMatrix) -> Result<IntegerMatrix> {
    let (m, r) = (c.rows(), c.cols());
    let mut a: Vec<Vec<bool>> = (0..m).map(|i| (0..r).map(|j| c[(i, j)].is_odd()).collect()).collect();
    let mut lower = vec![vec![false; r]; m];
    let mut perm: Vec<usize> = (0..m).collect();
    for j in 0..r {
        let p = (j..m)
            .find(|&i| a[i][j])
            .ok_or_else(|| internal("columns dependent mod 2"))?;
        a.swap(j, p);
        lower.swap(j, p);
        perm.swap(j, p);
        for i in j + 1..m {
            if a[i][j] {
                lower[i][j] = true;
                for k in j..r {
                    let t = a[j][k];
                    a[i][k] ^= t;
                }
            }
        }
    }
    // permuted c ≡ L·U with L m×r unit lower trapezoidal, U r×r unit upper
    let bit = |b: bool| if b { BigInt::one() } else { BigInt::from(0) };
    let mut l = IntegerMatrix::identity(m);
    let mut u = IntegerMatrix::identity(m);
    for i in 0..m {
        for j in 0..r.min(i) {
            l[(i, j)] = bit(lower[i][j]);
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            u[(i, j)] = bit(a[i][j]);
        }
    }
    let g = &l * &u;
    let mut out = IntegerMatrix::zeros(m, m);
    for (row, &orig) in perm.iter().enumerate() {
        for j in 0..m {
            out[(orig, j)] = g[(row, j)].clone();
        }
    }
    Ok(out)
}

/// Adds `basis · (g − c)/2` to `y`, so that the images `c` become the first columns of `g`.
fn adjust(y: &IntegerMatrix, basis: &IntegerMatrix, c: &IntegerMatrix, g: &IntegerMatrix) -> Result<IntegerMatrix> {
    let r = c.cols();
    let diff = (&g.columns_range(0, r) - c).div_exact(&BigInt::from(2))?;
    Ok(y + &(basis * &diff))
}

pub fn decompose(m: &FreeGModule) -> Result<GModuleDecomposition> {
    let n = m.rank();
    let sigma = m.sigma();
    let id = IntegerMatrix::identity(n);
    let b = kernel_basis(&(sigma - &id));
    let p = kernel_basis(&(sigma + &id));
    let bp = b.hstack(&p)?;
    if bp.cols() != n {
        return Err(internal("eigenspaces do not span"));
    }
    // Λ = colspan(u⁻¹) and B ⊕ P = colspan(u⁻¹ d): the columns with d = 2 lift a basis of Λ/(B ⊕ P)
    let s = smith_normal_form(&bp);
    let diag = s.diagonal();
    if diag.iter().any(|d| !d.is_one() && *d != BigInt::from(2)) {
        return Err(internal("B ⊕ P has index other than a power of 2"));
    }
    let twos: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
    let r0 = twos.len();
    let mut y = s.u_inv.select_columns(&twos);

    let cp = coordinates(&p, &(&(&id - sigma) * &y))?;
    let gp = completion_mod_two(&cp)?;
    y = adjust(&y, &p, &cp, &gp)?;
    let cb = coordinates(&b, &(&(&id + sigma) * &y))?;
    let gb = completion_mod_two(&cb)?;
    y = adjust(&y, &b, &cb, &gb)?;

    let sy = sigma * &y;
    let mut cols = Vec::with_capacity(n);
    for i in 0..r0 {
        cols.push(y.column(i));
        cols.push(sy.column(i));
    }
    cols.extend((&b * &gb.columns_range(r0, b.cols())).to_columns());
    cols.extend((&p * &gp.columns_range(r0, p.cols())).to_columns());
    let adapted = IntegerMatrix::from_columns(&cols, n)?;
    let out = GModuleDecomposition {
        r0,
        r_plus: b.cols() - r0,
        r_minus: p.cols() - r0,
        adapted_basis: adapted,
    };
    verify(m, &out)?;
    Ok(out)
}

fn verify(m: &FreeGModule, d: &GModuleDecomposition) -> Result<()> {
    let c = &d.adapted_basis;
    if !c.is_unimodular() {
        return Err(internal("adapted basis is not unimodular"));
    }
    let conj = coordinates(c, &(m.sigma() * c))?;
    if conj != canonical_block_form(d.r0, d.r_plus, d.r_minus) {
        return Err(internal("adapted basis does not realize the block form"));
    }
    Ok(())
}
