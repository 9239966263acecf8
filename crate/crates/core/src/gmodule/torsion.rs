//! Finite-level check that the anti-invariant part of `M ⊗ Q/Z` is the Prym part.
//!
//! At level n both sides live in `M ⊗ (1/n)Z/Z`. Working in `Z^k / 2n Z^k`, the
//! level-n elements are `2Z^k / 2nZ^k`. A level-n element in the image of σ−1
//! always has a preimage of order dividing 2n (check on Z[G], Z₊, Z₋ separately),
//! so the right-hand side is `((σ−1)Z^k + 2nZ^k) ∩ 2Z^k`.

use num_bigint::BigInt;
use serde::Serialize;

use super::FreeGModule;
use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, lattice_intersection, quotient_structure, FinAbGroup, IntegerMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionPrymReport {
    pub level: u64,
    /// Level at which preimages under σ−1 are searched.
    pub preimage_level: u64,
    /// `M^{σ=−1} ⊗ (1/n)Z/Z` inside `M ⊗ (1/n)Z/Z`.
    pub anti_invariant_side: FinAbGroup,
    /// n-torsion of `(σ−1)(M ⊗ Q/Z)`.
    pub prym_side: FinAbGroup,
    pub equal: bool,
}

pub fn torsion_prym_check(m: &FreeGModule, n: u64) -> Result<TorsionPrymReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("level must be at least 2, got {}", n)));
    }
    let k = m.rank();
    let big = BigInt::from(2 * n);
    let ambient = IntegerMatrix::identity(k).scaled(&big);
    let level_n = IntegerMatrix::identity(k).scaled(&BigInt::from(2));

    let anti = m.anti_invariants().scaled(&BigInt::from(2));
    let lhs = canonical_basis(&anti.hstack(&ambient)?);
    let image = m.sigma_minus_one().hstack(&ambient)?;
    let rhs = lattice_intersection(&image, &level_n)?;

    Ok(TorsionPrymReport {
        level: n,
        preimage_level: 2 * n,
        anti_invariant_side: quotient_structure(&lhs, &ambient)?,
        prym_side: quotient_structure(&rhs, &ambient)?,
        equal: lhs == rhs,
    })
}
