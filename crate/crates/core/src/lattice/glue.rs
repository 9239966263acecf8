use num_traits::{Signed, Zero};

use super::InvolutionLattice;
use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, coordinates, IntegerMatrix};

/// Unimodular overlattice `{(x, y) ∈ M* ⊕ M* : x − y ∈ M}` of `M ⊕ M(−1)`, with
/// σ acting diagonally. Returns the lattice and the embedding of M as `(m, 0)`;
/// its orthogonal complement is the second copy `M(−1)`.
pub fn doubled_overlattice(m: &InvolutionLattice) -> Result<(InvolutionLattice, IntegerMatrix)> {
    let k = m.rank();
    let g = m.gram();
    let d = g.determinant()?.abs();
    if d.is_zero() {
        return Err(Error::Degenerate("cannot glue a degenerate lattice".into()));
    }
    // Everything is scaled by d so that M* = G⁻¹Z^k becomes integral.
    let adj = crate::linalg::solve_matrix(g, &IntegerMatrix::identity(k).scaled(&d))?
        .ok_or_else(|| Error::Internal("d·G⁻¹ is not integral".into()))?;
    let di = IntegerMatrix::identity(k).scaled(&d);
    let zero = IntegerMatrix::zeros(k, k);
    let gens = di
        .vstack(&zero)?
        .hstack(&zero.vstack(&di)?)?
        .hstack(&adj.vstack(&adj)?)?;
    let basis = canonical_basis(&gens);
    let ambient = IntegerMatrix::block_diagonal(&[g, &-g]);
    let d2 = &d * &d;
    let gram = (&(&basis.transpose() * &ambient) * &basis).div_exact(&d2)?;
    let sigma2 = IntegerMatrix::block_diagonal(&[m.sigma(), m.sigma()]);
    let sigma = coordinates(&basis, &(&sigma2 * &basis))?;
    let embed = coordinates(&basis, &di.vstack(&zero)?)?;
    let l = InvolutionLattice::new(gram, sigma)?;
    debug_assert!(l.base().is_unimodular());
    Ok((l, embed))
}
