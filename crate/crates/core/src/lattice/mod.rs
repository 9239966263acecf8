//! Integral symmetric bilinear forms, with and without an involutive isometry.

mod brauer;
mod correspondence;
mod discriminant;
mod glue;
mod modify;
mod prym;
mod verify;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use brauer::{brauer_k, brauer_report, verify_brauer_sequences, BrauerReport, LevelReport, SequenceReport};
pub use correspondence::{canonical_instance, verify_prym_correspondence, CorrespondenceReport};
pub use discriminant::{discriminant_group, discriminant_of, DiscriminantGModule};
pub use glue::doubled_overlattice;
pub use modify::{modify, scale, Sign};
pub use prym::{prym_lattice, PrymLattice};
pub use verify::{
    claim_one_holds, verify_det_formula, verify_rank_formula, ClaimOne, DetFormulaReport, Mode, RankFormulaReport,
};

use crate::error::{Error, Result};
use crate::gmodule::FreeGModule;
use crate::linalg::{
    canonical_basis, coordinates, dot, kernel_basis, rank, same_span, saturate_span, span_contains, IntegerMatrix,
};

/// Free module `Z^n` with a symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearLattice {
    gram: IntegerMatrix,
}

impl BilinearLattice {
    pub fn new(gram: IntegerMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Shape(format!("gram is {}x{}", gram.rows(), gram.cols())));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntegerMatrix {
        &self.gram
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant().expect("square")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        Ok(dot(x, &self.gram.mul_vec(y)?))
    }

    /// `b(x, ·)` as a vector.
    pub fn functional(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        self.gram.mul_vec(x)
    }

    pub fn negated(&self) -> Self {
        BilinearLattice { gram: -&self.gram }
    }

    /// Gram matrix of the sublattice spanned by the columns of `basis`.
    pub fn restrict(&self, basis: &IntegerMatrix) -> Result<BilinearLattice> {
        let g = basis.transpose().checked_mul(&self.gram)?.checked_mul(basis)?;
        Ok(BilinearLattice { gram: g })
    }

    /// Canonical saturated basis of `{v : b(v, s) = 0 for all s ∈ S}`.
    pub fn orthogonal_complement(&self, s: &IntegerMatrix) -> Result<IntegerMatrix> {
        if s.rows() != self.rank() {
            return Err(Error::Shape(format!(
                "sublattice of Z^{} in a rank {} lattice",
                s.rows(),
                self.rank()
            )));
        }
        Ok(kernel_basis(&s.transpose().checked_mul(&self.gram)?))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        BilinearLattice {
            gram: IntegerMatrix::block_diagonal(&[&self.gram, &other.gram]),
        }
    }
}

/// A lattice with an involutive isometry σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionLattice {
    base: BilinearLattice,
    sigma: IntegerMatrix,
}

impl InvolutionLattice {
    pub fn new(gram: IntegerMatrix, sigma: IntegerMatrix) -> Result<Self> {
        let base = BilinearLattice::new(gram)?;
        if sigma.rows() != base.rank() || sigma.cols() != base.rank() {
            return Err(Error::Shape(format!(
                "sigma is {}x{} for a rank {} lattice",
                sigma.rows(),
                sigma.cols(),
                base.rank()
            )));
        }
        if &sigma * &sigma != IntegerMatrix::identity(base.rank()) {
            return Err(Error::NotInvolution);
        }
        if &(&sigma.transpose() * base.gram()) * &sigma != *base.gram() {
            return Err(Error::NotIsometry);
        }
        Ok(InvolutionLattice { base, sigma })
    }

    pub fn base(&self) -> &BilinearLattice {
        &self.base
    }

    pub fn gram(&self) -> &IntegerMatrix {
        self.base.gram()
    }

    pub fn sigma(&self) -> &IntegerMatrix {
        &self.sigma
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn module(&self) -> FreeGModule {
        FreeGModule::new(self.sigma.clone()).expect("validated on construction")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        InvolutionLattice {
            base: self.base.direct_sum(&other.base),
            sigma: IntegerMatrix::block_diagonal(&[&self.sigma, &other.sigma]),
        }
    }

    pub fn is_stable(&self, s: &IntegerMatrix) -> bool {
        s.rows() == self.rank() && span_contains(s, &(&self.sigma * s))
    }

    /// Errors unless `s` has the right shape, independent columns, is σ-stable and saturated.
    pub fn check_sublattice(&self, s: &IntegerMatrix) -> Result<()> {
        if s.rows() != self.rank() {
            return Err(Error::Shape(format!(
                "sublattice of Z^{} in a rank {} lattice",
                s.rows(),
                self.rank()
            )));
        }
        let r = rank(s);
        if r != s.cols() {
            return Err(Error::RankDeficient {
                rank: r,
                cols: s.cols(),
            });
        }
        if !self.is_stable(s) {
            return Err(Error::NotStable);
        }
        if !same_span(&saturate_span(s), s) {
            return Err(Error::NotSaturated);
        }
        Ok(())
    }

    /// Involution lattice structure on a σ-stable sublattice with independent columns.
    pub fn restrict(&self, basis: &IntegerMatrix) -> Result<InvolutionLattice> {
        let sigma = coordinates(basis, &(&self.sigma * basis)).map_err(|_| Error::NotStable)?;
        InvolutionLattice::new(self.base.restrict(basis)?.gram, sigma)
    }

    pub fn orthogonal_complement(&self, s: &IntegerMatrix) -> Result<IntegerMatrix> {
        self.base.orthogonal_complement(s)
    }

    /// Canonical basis of the anti-invariant sublattice.
    pub fn anti_invariants(&self) -> IntegerMatrix {
        self.module().anti_invariants()
    }

    pub fn invariants(&self) -> IntegerMatrix {
        self.module().invariants()
    }

    /// Canonical basis of the σ-stable saturated sublattice generated by `gens` and their images.
    pub fn stable_saturation(&self, gens: &IntegerMatrix) -> Result<IntegerMatrix> {
        Ok(saturate_span(&gens.hstack(&(&self.sigma * gens))?))
    }

    /// r0 hyperbolic planes [[0,1],[1,0]] swapped by σ, then ⟨d⟩ with σ = 1 for
    /// each `plus` entry and ⟨d⟩ with σ = −1 for each `minus` entry.
    pub fn hyperbolic_swap(r0: usize, plus: &[i64], minus: &[i64]) -> Self {
        let n = 2 * r0 + plus.len() + minus.len();
        let mut gram = IntegerMatrix::zeros(n, n);
        let mut sigma = IntegerMatrix::zeros(n, n);
        for k in 0..r0 {
            for (i, j) in [(2 * k, 2 * k + 1), (2 * k + 1, 2 * k)] {
                gram[(i, j)] = BigInt::one();
                sigma[(i, j)] = BigInt::one();
            }
        }
        for (t, &d) in plus.iter().enumerate() {
            let i = 2 * r0 + t;
            gram[(i, i)] = BigInt::from(d);
            sigma[(i, i)] = BigInt::one();
        }
        for (t, &d) in minus.iter().enumerate() {
            let i = 2 * r0 + plus.len() + t;
            gram[(i, i)] = BigInt::from(d);
            sigma[(i, i)] = -BigInt::one();
        }
        InvolutionLattice::new(gram, sigma).expect("block construction is an isometric involution")
    }
}

/// Canonical form of a sublattice basis, for comparisons in reports.
pub fn canonical(s: &IntegerMatrix) -> IntegerMatrix {
    canonical_basis(s)
}
