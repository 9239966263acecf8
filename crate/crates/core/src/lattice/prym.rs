use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::InvolutionLattice;
use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, IntegerMatrix};

/// `(σ−1)(M^⊥)` with half the ambient form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrymLattice {
    /// Canonical basis of M^⊥, ambient coordinates.
    pub complement: IntegerMatrix,
    /// Canonical basis of the Prym part, ambient coordinates.
    pub basis: IntegerMatrix,
    pub halved_gram: IntegerMatrix,
}

impl PrymLattice {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn determinant(&self) -> BigInt {
        self.halved_gram.determinant().expect("square")
    }
}

pub fn prym_lattice(l: &InvolutionLattice, m: &IntegerMatrix) -> Result<PrymLattice> {
    l.check_sublattice(m)?;
    let complement = l.orthogonal_complement(m)?;
    let s = l.sigma() - &IntegerMatrix::identity(l.rank());
    let basis = canonical_basis(&s.checked_mul(&complement)?);
    let full = basis.transpose().checked_mul(l.gram())?.checked_mul(&basis)?;
    let two = BigInt::from(2);
    if full.entries().iter().any(|e| e.is_odd()) {
        return Err(Error::Internal("odd pairing on the Prym part".into()));
    }
    let halved_gram = full.div_exact(&two)?;
    Ok(PrymLattice {
        complement,
        basis,
        halved_gram,
    })
}
