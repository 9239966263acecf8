use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, kernel_basis, quotient_structure, smith_normal_form, FinAbGroup, IntegerMatrix};

/// Finite abelian group `⊕ Z/d_i` (invariant-factor generators) with an
/// involution given by an integer matrix on the generators.
///
/// Subgroups are handled as lattices `L` with `D ⊆ L ⊆ Z^k`, `D = diag(d_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGModule {
    group: FinAbGroup,
    sigma: IntegerMatrix,
}

impl FiniteGModule {
    pub fn new(group: FinAbGroup, sigma: IntegerMatrix) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::Precondition("finite G-module over an infinite group".into()));
        }
        let k = group.invariant_factors.len();
        if sigma.rows() != k || sigma.cols() != k {
            return Err(Error::Shape(format!(
                "action is {}x{} on {} generators",
                sigma.rows(),
                sigma.cols(),
                k
            )));
        }
        let d = &group.invariant_factors;
        let mut reduced = sigma.clone();
        for i in 0..k {
            for j in 0..k {
                reduced[(i, j)] = sigma[(i, j)].mod_floor(&d[i]);
            }
        }
        for i in 0..k {
            for j in 0..k {
                if !(&reduced[(i, j)] * &d[j]).is_multiple_of(&d[i]) {
                    return Err(Error::Precondition(
                        "action is not well defined on the relations".into(),
                    ));
                }
            }
        }
        let sq = &reduced * &reduced;
        for i in 0..k {
            for j in 0..k {
                let target = if i == j { BigInt::one() } else { BigInt::zero() };
                if !(&sq[(i, j)] - target).is_multiple_of(&d[i]) {
                    return Err(Error::NotInvolution);
                }
            }
        }
        Ok(FiniteGModule { group, sigma: reduced })
    }

    /// `Z^n / colspan(sub)` with the action induced by `sigma`; `sub` must have
    /// rank n and be σ-stable. Also returns the map `Z^n → Z^k` onto generators.
    pub fn from_quotient(sigma: &IntegerMatrix, sub: &IntegerMatrix) -> Result<(Self, IntegerMatrix)> {
        let n = sigma.rows();
        if sub.rows() != n {
            return Err(Error::Shape(format!("sublattice of Z^{} in rank {}", sub.rows(), n)));
        }
        let s = smith_normal_form(sub);
        if s.rank() != n {
            return Err(Error::Precondition("quotient is infinite".into()));
        }
        if !crate::linalg::span_contains(sub, &sigma.checked_mul(sub)?) {
            return Err(Error::NotStable);
        }
        let diag = s.diagonal();
        let idx: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
        let action = &(&s.u * sigma) * &s.u_inv;
        let action = action.select_rows(&idx).select_columns(&idx);
        let group = FinAbGroup {
            free_rank: 0,
            invariant_factors: idx.iter().map(|&i| diag[i].clone()).collect(),
        };
        let projection = s.u.select_rows(&idx);
        Ok((FiniteGModule::new(group, action)?, projection))
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn sigma(&self) -> &IntegerMatrix {
        &self.sigma
    }

    pub fn generators(&self) -> usize {
        self.group.invariant_factors.len()
    }

    pub fn order(&self) -> BigInt {
        self.group.torsion_order()
    }

    pub fn relations(&self) -> IntegerMatrix {
        IntegerMatrix::diagonal(&self.group.invariant_factors)
    }

    fn shifted(&self, k: i64) -> IntegerMatrix {
        &self.sigma + &IntegerMatrix::identity(self.generators()).scaled(&BigInt::from(k))
    }

    /// Lattice of `{x : f x ≡ 0}` for an endomorphism `f` given on generators.
    pub fn kernel_lattice(&self, f: &IntegerMatrix) -> IntegerMatrix {
        let k = self.generators();
        let stacked = f.hstack(&-&self.relations()).expect("square");
        let ker = kernel_basis(&stacked);
        canonical_basis(&ker.rows_range(0, k))
    }

    /// Lattice of `f(M) + relations`.
    pub fn image_lattice(&self, f: &IntegerMatrix) -> IntegerMatrix {
        canonical_basis(&f.hstack(&self.relations()).expect("square"))
    }

    /// Isomorphism type of the subgroup represented by `lattice ⊇ relations`.
    pub fn subgroup_structure(&self, lattice: &IntegerMatrix) -> FinAbGroup {
        quotient_structure(lattice, &self.relations()).expect("subgroup lattices contain the relations")
    }

    pub fn invariant_lattice(&self) -> IntegerMatrix {
        self.kernel_lattice(&self.shifted(-1))
    }

    pub fn anti_invariant_lattice(&self) -> IntegerMatrix {
        self.kernel_lattice(&self.shifted(1))
    }

    /// `ker(σ − 1)`.
    pub fn plus_part(&self) -> FinAbGroup {
        self.subgroup_structure(&self.invariant_lattice())
    }

    /// `ker(σ + 1)`.
    pub fn minus_part(&self) -> FinAbGroup {
        self.subgroup_structure(&self.anti_invariant_lattice())
    }

    pub fn cohomology(&self, degree: usize) -> FinAbGroup {
        if degree == 0 {
            return self.plus_part();
        }
        let (ker, im) = if degree % 2 == 1 {
            (self.anti_invariant_lattice(), self.image_lattice(&self.shifted(-1)))
        } else {
            (self.invariant_lattice(), self.image_lattice(&self.shifted(1)))
        };
        quotient_structure(&ker, &im).expect("image lies in kernel")
    }
}
