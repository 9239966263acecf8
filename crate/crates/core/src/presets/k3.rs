//! Degree 14 K3 data: the lattice `U³ ⊕ E8(−1)² ⊕ ⟨−2⟩` of a hyperkähler
//! fourfold of K3^[2] type, the class `λ₀ = 2l − 5δ`, and the form `b₀`
//! obtained from the ambient form by a (−)-modification along `λ₀`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::ser_big_vec;
use crate::lattice::{BilinearLattice, Sign};
use crate::linalg::{canonical_basis, vec_content, IntegerMatrix};
use crate::report::{all_hold, Check};

/// Cartan matrix of E8 (positive definite, even, unimodular).
pub fn e8_cartan() -> IntegerMatrix {
    // Bourbaki labels: chain 1-3-4-5-6-7-8, node 2 attached to 4.
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut c = IntegerMatrix::identity(8).scaled(&BigInt::from(2));
    for (i, j) in edges {
        c[(i, j)] = BigInt::from(-1);
        c[(j, i)] = BigInt::from(-1);
    }
    c
}

#[derive(Clone, Debug, Serialize)]
pub struct BeauvilleDonagi {
    /// Gram of `b` on `H²(S) ⊕ Zδ`: three hyperbolic planes, two `E8(−1)`, then `⟨−2⟩`.
    pub b: IntegerMatrix,
    /// `b₀ = −m⁻_{λ₀}(b)`.
    pub b0: IntegerMatrix,
    #[serde(serialize_with = "ser_big_vec")]
    pub l: Vec<BigInt>,
    #[serde(serialize_with = "ser_big_vec")]
    pub delta: Vec<BigInt>,
    #[serde(serialize_with = "ser_big_vec")]
    pub lambda0: Vec<BigInt>,
    pub checks: Vec<Check>,
}

impl BeauvilleDonagi {
    pub fn form(&self) -> BilinearLattice {
        BilinearLattice::new(self.b.clone()).expect("symmetric")
    }

    pub fn cubic_form(&self) -> BilinearLattice {
        BilinearLattice::new(self.b0.clone()).expect("symmetric")
    }
}

fn unit(n: usize, i: usize) -> Vec<BigInt> {
    (0..n)
        .map(|k| if k == i { BigInt::one() } else { BigInt::from(0) })
        .collect()
}

fn combine(a: i64, x: &[BigInt], c: i64, y: &[BigInt]) -> Vec<BigInt> {
    x.iter().zip(y).map(|(p, q)| p * a + q * c).collect()
}

/// Builds the data and runs the self-validations; any failed check is an
/// internal error carrying the list of failures.
pub fn beauville_donagi() -> Result<BeauvilleDonagi> {
    let hyperbolic = IntegerMatrix::from_i64(&[[0, 1], [1, 0]]);
    let e8m = -&e8_cartan();
    let minus_two = IntegerMatrix::from_i64(&[[-2]]);
    let b = IntegerMatrix::block_diagonal(&[&hyperbolic, &hyperbolic, &hyperbolic, &e8m, &e8m, &minus_two]);
    let n = b.rows();
    let form = BilinearLattice::new(b.clone())?;

    // l = e + 7f in the first hyperbolic plane: primitive of square 14.
    let l = combine(1, &unit(n, 0), 7, &unit(n, 1));
    let delta = unit(n, n - 1);
    let lambda0 = combine(2, &l, -5, &delta);

    let cubic = form.modify(&lambda0, Sign::Minus)?.negated();
    let back = cubic.modify(&lambda0, Sign::Minus)?.negated();

    let b_ll = form.pairing(&lambda0, &lambda0)?;
    let s = form.scale(&lambda0)?;
    let b0_ll = cubic.pairing(&lambda0, &lambda0)?;
    let det_b0 = cubic.determinant();
    let checks = vec![
        Check::with_detail(
            "l² = 14, l primitive",
            form.pairing(&l, &l)? == BigInt::from(14) && vec_content(&l).is_one(),
            "l = e + 7f",
        ),
        Check::with_detail(
            "det b = ±2",
            form.determinant().abs() == BigInt::from(2),
            form.determinant().to_string(),
        ),
        Check::with_detail("b(λ₀, λ₀) = 6", b_ll == BigInt::from(6), b_ll.to_string()),
        Check::with_detail("scale of λ₀ under b is 2", s == BigInt::from(2), s.to_string()),
        Check::with_detail("b₀(λ₀, λ₀) = 3", b0_ll == BigInt::from(3), b0_ll.to_string()),
        Check::with_detail("b₀ unimodular", det_b0.abs().is_one(), det_b0.to_string()),
        Check::new("−m⁻(b₀) = b", back.gram() == &b),
        Check::new(
            "λ₀^⊥ agrees under b and b₀",
            canonical_basis(&form.orthogonal_complement(&IntegerMatrix::column_vector(&lambda0))?)
                == canonical_basis(&cubic.orthogonal_complement(&IntegerMatrix::column_vector(&lambda0))?),
        ),
    ];
    if !all_hold(&checks) {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        return Err(Error::Internal(format!("degree 14 data failed: {}", failed.join(", "))));
    }
    debug_assert_eq!(n, 23);
    Ok(BeauvilleDonagi {
        b,
        b0: cubic.gram().clone(),
        l,
        delta,
        lambda0,
        checks,
    })
}
