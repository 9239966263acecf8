use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{smith_normal_form, IntegerMatrix};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`, with
/// `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup {
            free_rank: rank,
            invariant_factors: vec![],
        }
    }

    /// `Z/n`, normalized (so `cyclic(1)` is trivial and `cyclic(0)` is `Z`).
    pub fn cyclic(n: i64) -> Self {
        Self::from_orders(&[BigInt::from(n)])
    }

    /// `(Z/2)^k`.
    pub fn elementary_two(k: usize) -> Self {
        FinAbGroup {
            free_rank: 0,
            invariant_factors: vec![BigInt::from(2); k],
        }
    }

    /// Normalizes `⊕ Z/a_i` for arbitrary `a_i` (0 meaning `Z`, ±1 trivial).
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let diag: Vec<BigInt> = orders.iter().map(|a| a.abs()).collect();
        let s = smith_normal_form(&IntegerMatrix::diagonal(&diag));
        Self::from_smith_diagonal(&s.diagonal(), 0)
    }

    /// Group from a Smith diagonal plus `extra_free` additional free generators.
    pub(crate) fn from_smith_diagonal(diag: &[BigInt], extra_free: usize) -> Self {
        let mut free_rank = extra_free;
        let mut factors = vec![];
        for d in diag {
            if d.is_zero() {
                free_rank += 1;
            } else if !d.is_one() {
                factors.push(d.clone());
            }
        }
        FinAbGroup {
            free_rank,
            invariant_factors: factors,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        let mut g = Self::from_orders(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Number of cyclic factors, i.e. the minimal number of torsion generators.
    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `k` if the group is `(Z/2)^k`, otherwise `None`.
    pub fn elementary_two_rank(&self) -> Option<usize> {
        (self.free_rank == 0 && self.invariant_factors.iter().all(|d| *d == BigInt::from(2)))
            .then_some(self.invariant_factors.len())
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Subgroup of elements killed by `n`: `⊕ Z/gcd(d_i, n)`.
    pub fn n_torsion(&self, n: &BigInt) -> Self {
        let orders: Vec<BigInt> = self.invariant_factors.iter().map(|d| d.gcd(n)).collect();
        Self::from_orders(&orders)
    }

    /// `G / nG`.
    pub fn mod_n(&self, n: &BigInt) -> Self {
        let mut orders: Vec<BigInt> = self.invariant_factors.iter().map(|d| d.gcd(n)).collect();
        orders.extend(std::iter::repeat(n.clone()).take(self.free_rank));
        Self::from_orders(&orders)
    }

    /// Elementary divisors: prime-power orders of a primary decomposition.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = vec![];
        for d in &self.invariant_factors {
            let mut rest = d.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= rest {
                if rest.is_multiple_of(&p) {
                    let mut q = BigInt::one();
                    while rest.is_multiple_of(&p) {
                        rest /= &p;
                        q *= &p;
                    }
                    out.push(q);
                }
                p += 1;
            }
            if !rest.is_one() {
                out.push(rest);
            }
        }
        out.sort();
        out
    }

    fn fmt_factors(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts: Vec<String> = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            k => parts.push(format!("Z^{}", k)),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("Z/{}", d));
            } else {
                parts.push(format!("(Z/{})^{}", d, run));
            }
            i += run;
        }
        parts.join(" ⊕ ")
    }

    /// Same as `Display` but with each summand decorated by a subscript, e.g. `(Z/5)₊`.
    pub fn fmt_signed(&self, subscript: &str) -> String {
        if self.is_trivial() {
            return format!("0{}", subscript);
        }
        let mut parts = vec![];
        match self.free_rank {
            0 => {}
            1 => parts.push(format!("Z{}", subscript)),
            k => parts.push(format!("Z{}^{}", subscript, k)),
        }
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("(Z/{}){}", d, subscript));
            } else {
                parts.push(format!("(Z/{}){}^{}", d, subscript, run));
            }
            i += run;
        }
        parts.join(" ⊕ ")
    }

    /// Invariant factors as machine integers when small (for reports).
    pub fn factors_i64(&self) -> Option<Vec<i64>> {
        self.invariant_factors.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_factors())
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FinAbGroup", 3)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let factors: Vec<serde_json::Number> = self
            .invariant_factors
            .iter()
            .map(crate::format::big_to_number)
            .collect();
        st.serialize_field("invariant_factors", &factors)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ivec;

    #[test]
    fn normalization() {
        assert_eq!(FinAbGroup::from_orders(&ivec(&[2, 3])).invariant_factors, ivec(&[6]));
        assert_eq!(
            FinAbGroup::from_orders(&ivec(&[4, 6])).invariant_factors,
            ivec(&[2, 12])
        );
        assert_eq!(
            FinAbGroup::from_orders(&ivec(&[1, 0, -5])),
            FinAbGroup {
                free_rank: 1,
                invariant_factors: ivec(&[5])
            }
        );
        assert!(FinAbGroup::cyclic(1).is_trivial());
    }

    #[test]
    fn display() {
        assert_eq!(FinAbGroup::elementary_two(14).to_string(), "(Z/2)^14");
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        assert_eq!(
            FinAbGroup::from_orders(&ivec(&[0, 0, 2, 6])).to_string(),
            "Z^2 ⊕ Z/2 ⊕ Z/6"
        );
        assert_eq!(FinAbGroup::cyclic(5).fmt_signed("₊"), "(Z/5)₊");
    }

    #[test]
    fn torsion_parts() {
        let g = FinAbGroup::from_orders(&ivec(&[4, 12]));
        assert_eq!(g.n_torsion(&BigInt::from(2)), FinAbGroup::elementary_two(2));
        assert_eq!(g.order(), Some(BigInt::from(48)));
        assert_eq!(g.elementary_divisors(), ivec(&[3, 4, 4]));
        assert_eq!(g.elementary_two_rank(), None);
    }
}
