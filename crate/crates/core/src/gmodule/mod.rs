//! Modules over Z[G] for the group G = {1, σ} of order two.

mod cohomology;
mod decompose;
mod finite;
mod torsion;

use num_bigint::BigInt;

pub use decompose::{canonical_block_form, decompose, type_string, GModuleDecomposition};
pub use finite::FiniteGModule;
pub use torsion::{torsion_prym_check, TorsionPrymReport};

use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, coordinates, kernel_basis, smith_normal_form, FinAbGroup, IntegerMatrix};

/// A free Z-module of finite rank with an involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGModule {
    sigma: IntegerMatrix,
}

impl FreeGModule {
    pub fn new(sigma: IntegerMatrix) -> Result<Self> {
        if !sigma.is_square() {
            return Err(Error::Shape(format!("sigma is {}x{}", sigma.rows(), sigma.cols())));
        }
        if &sigma * &sigma != IntegerMatrix::identity(sigma.rows()) {
            return Err(Error::NotInvolution);
        }
        Ok(FreeGModule { sigma })
    }

    /// Z[G] with basis (1, σ).
    pub fn regular() -> Self {
        FreeGModule {
            sigma: IntegerMatrix::from_i64(&[[0, 1], [1, 0]]),
        }
    }

    /// Z₊^n.
    pub fn trivial(n: usize) -> Self {
        FreeGModule {
            sigma: IntegerMatrix::identity(n),
        }
    }

    /// Z₋^n.
    pub fn sign(n: usize) -> Self {
        FreeGModule {
            sigma: -&IntegerMatrix::identity(n),
        }
    }

    pub fn from_type(r0: usize, r_plus: usize, r_minus: usize) -> Self {
        FreeGModule {
            sigma: canonical_block_form(r0, r_plus, r_minus),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        FreeGModule {
            sigma: IntegerMatrix::block_diagonal(&[&self.sigma, &other.sigma]),
        }
    }

    pub fn rank(&self) -> usize {
        self.sigma.rows()
    }

    pub fn sigma(&self) -> &IntegerMatrix {
        &self.sigma
    }

    fn shifted(&self, k: i64) -> IntegerMatrix {
        &self.sigma + &IntegerMatrix::identity(self.rank()).scaled(&BigInt::from(k))
    }

    /// σ − 1
    pub fn sigma_minus_one(&self) -> IntegerMatrix {
        self.shifted(-1)
    }

    /// σ + 1
    pub fn sigma_plus_one(&self) -> IntegerMatrix {
        self.shifted(1)
    }

    /// Canonical basis of ker(σ − 1).
    pub fn invariants(&self) -> IntegerMatrix {
        kernel_basis(&self.sigma_minus_one())
    }

    /// Canonical basis of ker(σ + 1).
    pub fn anti_invariants(&self) -> IntegerMatrix {
        kernel_basis(&self.sigma_plus_one())
    }

    /// Canonical basis of the Prym part (σ − 1)M.
    pub fn prym_part(&self) -> IntegerMatrix {
        canonical_basis(&self.sigma_minus_one())
    }

    /// Induced module on a σ-stable sublattice given by independent columns.
    pub fn restrict(&self, basis: &IntegerMatrix) -> Result<FreeGModule> {
        let image = self.sigma.checked_mul(basis)?;
        let s = coordinates(basis, &image).map_err(|_| Error::NotStable)?;
        FreeGModule::new(s)
    }

    /// Quotient by a σ-stable saturated sublattice.
    pub fn quotient(&self, sub: &IntegerMatrix) -> Result<Quotient> {
        Quotient::new(&self.sigma, sub)
    }

    pub fn cohomology(&self, degree: usize) -> FinAbGroup {
        cohomology::free_cohomology(self, degree)
    }
}

/// `Z^n / S` for a σ-stable saturated `S`, realized as `Z^(n-s)` with explicit
/// projection and section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FreeGModule,
    /// `(n-s) x n`, surjective, kernel exactly `S`.
    pub projection: IntegerMatrix,
    /// `n x (n-s)` with `projection * section = 1`.
    pub section: IntegerMatrix,
}

impl Quotient {
    pub fn new(sigma: &IntegerMatrix, sub: &IntegerMatrix) -> Result<Self> {
        let n = sigma.rows();
        if sub.rows() != n {
            return Err(Error::Shape(format!(
                "sublattice in Z^{} for a rank {} module",
                sub.rows(),
                n
            )));
        }
        let s = smith_normal_form(sub);
        let r = s.rank();
        if s.diagonal().iter().take(r).any(|d| *d != BigInt::from(1)) {
            return Err(Error::NotSaturated);
        }
        let projection = s.u.rows_range(r, n);
        let section = s.u_inv.columns_range(r, n);
        if !(&projection * &sigma.checked_mul(sub)?).is_zero() {
            return Err(Error::NotStable);
        }
        let induced = &(&projection * sigma) * &section;
        Ok(Quotient {
            module: FreeGModule::new(induced)?,
            projection,
            section,
        })
    }
}
