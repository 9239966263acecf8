//! Parity of `det(P)` for a conic bundle whose relevant sublattice is `M ≅ Z[G]`,
//! spanned by `x` and `σx`.
//!
//! With `q = |(Q_M)₋|` odd and `q′ = det(M₋)`, `|det P| = 2q²/|q′|`, so `det P`
//! is odd as soon as `q′` is even; and `q′ = (σx − x)² = 2(x² − x·σx)` always is.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::{ser_big, ser_opt_big};
use crate::lattice::{discriminant_of, InvolutionLattice};
use crate::linalg::IntegerMatrix;
use crate::report::{all_hold, Check, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct ConicParityReport {
    pub claim: &'static str,
    pub x_square: i64,
    pub x_dot_sigma_x: i64,
    #[serde(serialize_with = "ser_big")]
    pub det_m: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub q_prime: BigInt,
    /// `|(Q_M)₋|`, available when `det M` is odd.
    #[serde(serialize_with = "ser_opt_big")]
    pub q: Option<BigInt>,
    /// `2q²/|q′|` when q is known.
    #[serde(serialize_with = "ser_opt_big")]
    pub det_p_abs: Option<BigInt>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

pub fn conic_bundle_prym_parity(x_square: i64, x_dot_sigma_x: i64) -> Result<ConicParityReport> {
    let (a, b) = (x_square, x_dot_sigma_x);
    let m = InvolutionLattice::new(
        IntegerMatrix::from_i64(&[[a, b], [b, a]]),
        IntegerMatrix::from_i64(&[[0, 1], [1, 0]]),
    )?;
    let det_m = m.base().determinant();
    if det_m.is_zero() {
        return Err(Error::Degenerate(format!("x² = ±x·σx = {}", a)));
    }
    let q_prime = BigInt::from(2 * (a - b));
    let direct = m.base().restrict(&m.anti_invariants())?.determinant();
    let mut checks = vec![
        Check::with_detail("q′ = (σx − x)²", direct == q_prime, direct.to_string()),
        Check::new("q′ even", q_prime.is_even()),
    ];
    let (q, det_p_abs) = if det_m.is_odd() {
        let minus = discriminant_of(m.gram(), m.sigma())?
            .minus_part
            .expect("odd order splits");
        let q = minus.torsion_order();
        let num: BigInt = &q * &q * 2;
        let den = q_prime.abs();
        let exact = num.is_multiple_of(&den);
        checks.push(Check::with_detail(
            "2q²/q′ integral",
            exact,
            format!("2·{}²/{}", q, den),
        ));
        let det_p = exact.then(|| num / den);
        if let Some(d) = &det_p {
            checks.push(Check::new("det P odd", d.is_odd()));
        }
        (Some(q), det_p)
    } else {
        (None, None)
    };
    let verdict = Verdict::from_bool(all_hold(&checks));
    Ok(ConicParityReport {
        claim: "det of the Prym lattice is odd",
        x_square: a,
        x_dot_sigma_x: b,
        det_m,
        q_prime,
        q,
        det_p_abs,
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cubic_values() {
        let r = conic_bundle_prym_parity(1, 4).unwrap();
        assert_eq!(r.q_prime, BigInt::from(-6));
        assert_eq!(r.q, Some(BigInt::from(3)));
        assert_eq!(r.det_p_abs, Some(BigInt::from(3)));
        assert_eq!(r.verdict, Verdict::Verified);
        let r = conic_bundle_prym_parity(0, 1).unwrap();
        assert_eq!(r.q_prime, BigInt::from(-2));
        assert!(conic_bundle_prym_parity(3, 3).is_err());
        assert!(conic_bundle_prym_parity(3, -3).is_err());
    }

    proptest! {
        #[test]
        fn q_prime_always_even(a in -50i64..50, b in -50i64..50) {
            prop_assume!(a != b && a != -b);
            let r = conic_bundle_prym_parity(a, b).unwrap();
            prop_assert!(r.checks[0].holds && r.checks[1].holds);
        }
    }
}
