//! Discriminant group `M*/M` of a nondegenerate σ-stable sublattice.
//!
//! In dual coordinates `M → M*` is the Gram matrix and σ acts on `M*` by σᵀ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::InvolutionLattice;
use crate::error::{Error, Result};
use crate::gmodule::FiniteGModule;
use crate::linalg::{FinAbGroup, IntegerMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGModule {
    pub module: FiniteGModule,
    /// `Z^k = M*` (dual coordinates) onto the generators of `module`.
    pub projection: IntegerMatrix,
    /// `ker(σ−1)` and `ker(σ+1)`; only computed for odd order, where they split the group.
    pub plus_part: Option<FinAbGroup>,
    pub minus_part: Option<FinAbGroup>,
}

impl DiscriminantGModule {
    pub fn group(&self) -> &FinAbGroup {
        self.module.group()
    }

    pub fn order(&self) -> BigInt {
        self.module.order()
    }

    pub fn split_available(&self) -> bool {
        self.plus_part.is_some()
    }
}

impl fmt::Display for DiscriminantGModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.plus_part, &self.minus_part) {
            (Some(p), Some(m)) => {
                let parts: Vec<String> = [(p, "₊"), (m, "₋")]
                    .iter()
                    .filter(|(g, _)| !g.is_trivial())
                    .map(|(g, s)| g.fmt_signed(s))
                    .collect();
                if parts.is_empty() {
                    f.write_str("0")
                } else {
                    f.write_str(&parts.join(" ⊕ "))
                }
            }
            _ => write!(f, "{} (no ± split in even order)", self.module.group()),
        }
    }
}

impl Serialize for DiscriminantGModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DiscriminantGModule", 6)?;
        st.serialize_field("group", self.module.group())?;
        st.serialize_field("order", &crate::format::big_to_number(&self.order()))?;
        st.serialize_field("sigma_action", self.module.sigma())?;
        st.serialize_field("plus_part", &self.plus_part)?;
        st.serialize_field("minus_part", &self.minus_part)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// Discriminant of a lattice given directly by Gram matrix and σ (in the same basis).
pub fn discriminant_of(gram: &IntegerMatrix, sigma: &IntegerMatrix) -> Result<DiscriminantGModule> {
    let det = gram.determinant()?;
    if det == BigInt::from(0) {
        return Err(Error::Degenerate("discriminant group of a degenerate lattice".into()));
    }
    let (module, projection) = FiniteGModule::from_quotient(&sigma.transpose(), gram)?;
    let (plus_part, minus_part) = if module.order().is_odd() {
        (Some(module.plus_part()), Some(module.minus_part()))
    } else {
        (None, None)
    };
    Ok(DiscriminantGModule {
        module,
        projection,
        plus_part,
        minus_part,
    })
}

/// `Q_M = M*/M` for the σ-stable sublattice spanned by the columns of `m`.
pub fn discriminant_group(l: &InvolutionLattice, m: &IntegerMatrix) -> Result<DiscriminantGModule> {
    if m.rows() != l.rank() {
        return Err(Error::Shape(format!(
            "sublattice of Z^{} in a rank {} lattice",
            m.rows(),
            l.rank()
        )));
    }
    let r = crate::linalg::rank(m);
    if r != m.cols() {
        return Err(Error::RankDeficient {
            rank: r,
            cols: m.cols(),
        });
    }
    let sub = l.restrict(m)?;
    discriminant_of(sub.gram(), sub.sigma())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn cubic() -> InvolutionLattice {
        InvolutionLattice::new(
            IntegerMatrix::from_i64(&[[1, 4], [4, 1]]),
            IntegerMatrix::from_i64(&[[0, 1], [1, 0]]),
        )
        .unwrap()
    }

    #[test]
    fn cubic_split() {
        let q = discriminant_group(&cubic(), &IntegerMatrix::identity(2)).unwrap();
        assert_eq!(q.order(), BigInt::from(15));
        assert_eq!(q.plus_part, Some(FinAbGroup::cyclic(5)));
        assert_eq!(q.minus_part, Some(FinAbGroup::cyclic(3)));
        assert_eq!(q.to_string(), "(Z/5)₊ ⊕ (Z/3)₋");
    }

    #[test]
    fn unimodular_is_trivial() {
        let l = InvolutionLattice::hyperbolic_swap(2, &[1], &[-1]);
        let q = discriminant_group(&l, &IntegerMatrix::identity(6)).unwrap();
        assert!(q.group().is_trivial());
        assert_eq!(q.to_string(), "0");
    }

    #[test]
    fn even_order_has_no_split() {
        let l = InvolutionLattice::hyperbolic_swap(0, &[2], &[]);
        let q = discriminant_group(&l, &IntegerMatrix::identity(1)).unwrap();
        assert!(!q.split_available());
        assert_eq!(q.group(), &FinAbGroup::cyclic(2));
    }

    #[test]
    fn degenerate_rejected() {
        let l = InvolutionLattice::hyperbolic_swap(0, &[0], &[]);
        assert!(matches!(
            discriminant_group(&l, &IntegerMatrix::identity(1)),
            Err(Error::Degenerate(_))
        ));
    }

    proptest! {
        /// |Q| = |det| and, for odd order, the ± parts multiply out to |Q|.
        #[test]
        fn order_matches_determinant(a in -6i64..7, b in -6i64..7, c in -6i64..7) {
            // ⟨a⟩ ⊕ (swap block with x² = b, x·σx = c)
            let gram = IntegerMatrix::from_i64(&[[a, 0, 0], [0, b, c], [0, c, b]]);
            let sigma = IntegerMatrix::from_i64(&[[-1, 0, 0], [0, 0, 1], [0, 1, 0]]);
            let det = gram.determinant().unwrap();
            prop_assume!(det != BigInt::from(0));
            let q = discriminant_of(&gram, &sigma).unwrap();
            prop_assert_eq!(q.order(), det.abs());
            if let (Some(p), Some(m)) = (&q.plus_part, &q.minus_part) {
                prop_assert_eq!(p.torsion_order() * m.torsion_order(), det.abs());
            }
        }
    }
}
