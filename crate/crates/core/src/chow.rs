//! Chow ring of the Grassmannian of 2-planes in a rank-3 bundle E over P³:
//! `Z[h, η] / (h⁴, η³ − γ₁hη² + γ₂h²η − γ₃h³)` with `∫ h³η² = 1`.
//!
//! The cubic relation is `c₃(V₂) = 0` for `c(V₂) = c(E)/(1+η)`, where
//! `0 → V₂ → E → O(η) → 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

/// `c_i(E) = γ_i h^i`, `c₁(L) = λh`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AmbientData {
    pub gamma: [i64; 3],
    pub lambda: i64,
}

impl AmbientData {
    pub fn new(gamma: [i64; 3], lambda: i64) -> Self {
        AmbientData { gamma, lambda }
    }

    fn g(&self, i: usize) -> BigInt {
        BigInt::from(self.gamma[i - 1])
    }

    pub fn one(&self) -> RingElement {
        RingElement::monomial(*self, 0, 0, BigInt::one())
    }

    pub fn h(&self) -> RingElement {
        RingElement::monomial(*self, 1, 0, BigInt::one())
    }

    pub fn eta(&self) -> RingElement {
        RingElement::monomial(*self, 0, 1, BigInt::one())
    }

    pub fn constant(&self, c: i64) -> RingElement {
        RingElement::monomial(*self, 0, 0, BigInt::from(c))
    }

    /// Total Chern class `1 + γ₁h + γ₂h² + γ₃h³` of E.
    pub fn chern_e(&self) -> RingElement {
        let mut out = self.one();
        for i in 1..=3 {
            out = &out + &RingElement::monomial(*self, i, 0, self.g(i as usize));
        }
        out
    }

    /// `c₁(L)`.
    pub fn ell(&self) -> RingElement {
        self.h().scale(self.lambda)
    }
}

/// Sparse polynomial in h and η, exponents unbounded.
pub type Poly = BTreeMap<(u32, u32), BigInt>;

/// Normal form: coefficients of `h^a η^b` for `a ≤ 3`, `b ≤ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ambient: AmbientData,
    coeffs: [[BigInt; 3]; 4],
}

impl RingElement {
    pub fn zero(ambient: AmbientData) -> Self {
        RingElement {
            ambient,
            coeffs: Default::default(),
        }
    }

    pub fn monomial(ambient: AmbientData, a: u32, b: u32, c: BigInt) -> Self {
        reduce(ambient, &Poly::from([((a, b), c)]))
    }

    pub fn ambient(&self) -> AmbientData {
        self.ambient
    }

    pub fn coefficient(&self, a: usize, b: usize) -> &BigInt {
        &self.coeffs[a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::new();
        for a in 0..4 {
            for b in 0..3 {
                if !self.coeffs[a][b].is_zero() {
                    p.insert((a as u32, b as u32), self.coeffs[a][b].clone());
                }
            }
        }
        p
    }

    /// Part of total degree `d`.
    pub fn graded(&self, d: usize) -> Self {
        let mut out = RingElement::zero(self.ambient);
        for a in 0..4 {
            for b in 0..3 {
                if a + b == d {
                    out.coeffs[a][b] = self.coeffs[a][b].clone();
                }
            }
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        let mut out = self.clone();
        out.coeffs.iter_mut().flatten().for_each(|c| *c *= &k);
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(RingElement::monomial(self.ambient, 0, 0, BigInt::one()), |acc, _| {
            &acc * self
        })
    }

    /// Coefficients reduced mod n into `[0, n)`.
    pub fn mod_n(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        let mut out = self.clone();
        out.coeffs.iter_mut().flatten().for_each(|c| *c = c.mod_floor(&n));
        out
    }

    fn check_ambient(&self, other: &Self) {
        assert_eq!(self.ambient, other.ambient, "elements of different rings");
    }
}

/// Rewrites `h⁴ → 0` and `η³ → γ₁hη² − γ₂h²η + γ₃h³` until nothing applies.
pub fn reduce(ambient: AmbientData, p: &Poly) -> RingElement {
    let mut work: Poly = p
        .iter()
        .filter(|(&(a, _), c)| a < 4 && !c.is_zero())
        .map(|(k, c)| (*k, c.clone()))
        .collect();
    let relation = [(1u32, 2u32, ambient.g(1)), (2, 1, -ambient.g(2)), (3, 0, ambient.g(3))];
    loop {
        let Some((&(a, b), _)) = work.iter().rev().find(|(&(_, b), _)| b >= 3) else {
            break;
        };
        let c = work.remove(&(a, b)).expect("present");
        for (da, db, g) in &relation {
            let key = (a + da, b - 3 + db);
            if key.0 >= 4 || g.is_zero() {
                continue;
            }
            let e = work.entry(key).or_insert_with(BigInt::zero);
            *e += &c * g;
            if e.is_zero() {
                work.remove(&key);
            }
        }
    }
    let mut out = RingElement::zero(ambient);
    for ((a, b), c) in work {
        out.coeffs[a as usize][b as usize] = c;
    }
    out
}

/// Coefficient of `h³η²`.
pub fn integrate(x: &RingElement) -> BigInt {
    x.coeffs[3][2].clone()
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, other: &RingElement) -> RingElement {
        self.check_ambient(other);
        let mut out = self.clone();
        for a in 0..4 {
            for b in 0..3 {
                out.coeffs[a][b] += &other.coeffs[a][b];
            }
        }
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, other: &RingElement) -> RingElement {
        self + &(-other)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(-1)
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, other: &RingElement) -> RingElement {
        self.check_ambient(other);
        let mut p = Poly::new();
        for (&(a1, b1), c1) in &self.to_poly() {
            for (&(a2, b2), c2) in &other.to_poly() {
                *p.entry((a1 + a2, b1 + b2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        reduce(self.ambient, &p)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec![];
        for a in 0..4 {
            for b in 0..3 {
                let c = &self.coeffs[a][b];
                if c.is_zero() {
                    continue;
                }
                let mono = match (a, b) {
                    (0, 0) => String::new(),
                    _ => {
                        let h = match a {
                            0 => String::new(),
                            1 => "h".into(),
                            k => format!("h^{}", k),
                        };
                        let e = match b {
                            0 => String::new(),
                            1 => "η".into(),
                            k => format!("η^{}", k),
                        };
                        if h.is_empty() || e.is_empty() {
                            format!("{}{}", h, e)
                        } else {
                            format!("{}*{}", h, e)
                        }
                    }
                };
                let body = if mono.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    mono
                } else if *c == -BigInt::one() {
                    format!("-{}", mono)
                } else {
                    format!("{}*{}", c, mono)
                };
                terms.push(body);
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => s.push_str(&format!(" - {}", rest)),
                None => s.push_str(&format!(" + {}", t)),
            }
        }
        f.write_str(&s)
    }
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RingElement", 2)?;
        let coeffs: Vec<Vec<serde_json::Number>> = self
            .coeffs
            .iter()
            .map(|r| r.iter().map(crate::format::big_to_number).collect())
            .collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// `(c₁(V₂), c₂(V₂)) = (γ₁h − η, γ₂h² − γ₁hη + η²)`.
pub fn chern_v2(amb: AmbientData) -> (RingElement, RingElement) {
    let h = amb.h();
    let eta = amb.eta();
    let c1 = &h.scale(amb.gamma[0]) - &eta;
    let c2 = &(&h.pow(2).scale(amb.gamma[1]) - &(&h * &eta).scale(amb.gamma[0])) + &eta.pow(2);
    (c1, c2)
}

/// Total Chern class `1 + c₁ + c₂` of V₂.
pub fn total_chern_v2(amb: AmbientData) -> RingElement {
    let (c1, c2) = chern_v2(amb);
    &(&amb.one() + &c1) + &c2
}

/// Chern classes of `Sym²` of the dual of a rank-2 bundle with classes `c1, c2`:
/// with `c₁* = −c₁`, `c₂* = c₂`: `(3c₁*, 2c₁*² + 4c₂*, 4c₁*c₂*)`.
pub fn sym2_dual_chern(c1: &RingElement, c2: &RingElement) -> (RingElement, RingElement, RingElement) {
    let d1 = -c1;
    let s1 = d1.scale(3);
    let s2 = &d1.pow(2).scale(2) + &c2.scale(4);
    let s3 = (&d1 * c2).scale(4);
    (s1, s2, s3)
}

/// `[S] = c₃(Sym²V₂* ⊗ L) = s₃ + s₂ℓ + s₁ℓ² + ℓ³`.
pub fn class_of_s(amb: AmbientData) -> RingElement {
    let (c1, c2) = chern_v2(amb);
    let (s1, s2, s3) = sym2_dual_chern(&c1, &c2);
    let l = amb.ell();
    let mut out = s3;
    out = &out + &(&s2 * &l);
    out = &out + &(&s1 * &l.pow(2));
    &out + &l.pow(3)
}

/// Degree of the degeneration divisor, `−2γ₁ + 3λ`.
pub fn degeneration_degree(amb: AmbientData) -> i64 {
    -2 * amb.gamma[0] + 3 * amb.lambda
}

/// `[Δ] = −2c₁(E) + 3c₁(L)` as a class on the base, pulled back.
pub fn degeneration_class(amb: AmbientData) -> RingElement {
    amb.h().scale(degeneration_degree(amb))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub ambient: AmbientData,
    pub class_of_s: RingElement,
    /// `∫ [S] (c₁E − η)(2c₁E − c₁L)`.
    #[serde(serialize_with = "crate::format::ser_big")]
    pub pairing: BigInt,
    pub degeneration_degree: i64,
    pub degeneration_odd: bool,
    /// `pairing ≡ λ³ (mod 2)`.
    pub congruence_holds: bool,
    /// Pairing is odd; expected whenever the degeneration degree is odd.
    pub pairing_odd: bool,
}

pub fn parity_check(amb: AmbientData) -> ParityReport {
    let s = class_of_s(amb);
    let h = amb.h();
    let a = &h.scale(amb.gamma[0]) - &amb.eta();
    let b = h.scale(2 * amb.gamma[0] - amb.lambda);
    let n = integrate(&(&(&s * &a) * &b));
    let deg = degeneration_degree(amb);
    let lambda_cubed_parity = amb.lambda.rem_euclid(2) == 1;
    ParityReport {
        ambient: amb,
        class_of_s: s,
        congruence_holds: n.is_odd() == lambda_cubed_parity,
        pairing_odd: n.is_odd(),
        pairing: n,
        degeneration_degree: deg,
        degeneration_odd: deg.rem_euclid(2) == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn amb(g: [i64; 3], l: i64) -> AmbientData {
        AmbientData::new(g, l)
    }

    #[test]
    fn reduction_examples() {
        let a = amb([0, 0, 0], 0);
        assert!(a.eta().pow(3).is_zero());
        assert!(a.h().pow(5).is_zero());
        let b = amb([1, 0, 0], 0);
        assert_eq!(integrate(&(&b.h().pow(2) * &b.eta().pow(3))), BigInt::one());
        assert_eq!(integrate(&(&b.h().pow(3) * &b.eta().pow(2))), BigInt::one());
        assert_eq!(integrate(&b.h().pow(3)), BigInt::zero());
    }

    #[test]
    fn chern_of_v2_examples() {
        let a = amb([0, 0, 0], 0);
        let (c1, c2) = chern_v2(a);
        assert_eq!(c1, -&a.eta());
        assert_eq!(c2, a.eta().pow(2));
        let b = amb([1, 1, 1], 0);
        assert_eq!(chern_v2(b).0, &b.h() - &b.eta());
        assert_eq!(chern_v2(b).0.to_string(), "-η + h");
    }

    #[test]
    fn quintic_degeneration() {
        assert_eq!(degeneration_degree(amb([2, 0, 0], 3)), 5);
    }

    #[test]
    fn trivial_bundle_odd_lambda() {
        let r = parity_check(amb([0, 0, 0], 1));
        assert!(r.pairing_odd && r.congruence_holds);
    }

    #[test]
    fn mod_two_shape_of_s() {
        // [S] ≡ 3(η − c₁E)ℓ² + ℓ³ (mod 2)
        for g1 in -3..=3 {
            for l in -3..=3 {
                let a = amb([g1, 1, -2], l);
                let ell = a.ell();
                let expected = &(&(&a.eta() - &a.h().scale(g1)) * &ell.pow(2)).scale(3) + &ell.pow(3);
                assert_eq!(class_of_s(a).mod_n(2), expected.mod_n(2));
            }
        }
    }

    /// Polynomials in formal roots x, y with integer coefficients.
    type Roots = BTreeMap<(u32, u32), i64>;

    fn rmul(p: &Roots, q: &Roots) -> Roots {
        let mut out = Roots::new();
        for (&(a, b), c) in p {
            for (&(d, e), f) in q {
                *out.entry((a + d, b + e)).or_insert(0) += c * f;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn radd(p: &Roots, q: &Roots, k: i64) -> Roots {
        let mut out = p.clone();
        for (m, c) in q {
            *out.entry(*m).or_insert(0) += k * c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    #[test]
    fn sym2_matches_splitting_principle() {
        // dual roots −x, −y; Sym² roots −2x, −x−y, −2y
        let x = Roots::from([((1, 0), 1)]);
        let y = Roots::from([((0, 1), 1)]);
        let r1 = radd(&Roots::new(), &x, -2);
        let r2 = radd(&radd(&Roots::new(), &x, -1), &y, -1);
        let r3 = radd(&Roots::new(), &y, -2);
        let e1 = radd(&radd(&r1, &r2, 1), &r3, 1);
        let e2 = radd(&radd(&rmul(&r1, &r2), &rmul(&r1, &r3), 1), &rmul(&r2, &r3), 1);
        let e3 = rmul(&rmul(&r1, &r2), &r3);
        let c1 = radd(&x, &y, 1);
        let c2 = rmul(&x, &y);
        let d1 = radd(&Roots::new(), &c1, -1);
        assert_eq!(e1, radd(&Roots::new(), &d1, 3));
        assert_eq!(e2, radd(&radd(&Roots::new(), &rmul(&d1, &d1), 2), &c2, 4));
        assert_eq!(e3, radd(&Roots::new(), &rmul(&d1, &c2), 4));
    }

    #[test]
    fn sym2_of_zero_classes() {
        let a = amb([1, 2, 3], 1);
        let z = RingElement::zero(a);
        let (s1, s2, s3) = sym2_dual_chern(&z, &z);
        assert!(s1.is_zero() && s2.is_zero() && s3.is_zero());
    }

    fn ambient() -> impl Strategy<Value = AmbientData> {
        ([-3i64..=3, -3i64..=3, -3i64..=3], -3i64..=3).prop_map(|(g, l)| AmbientData::new(g, l))
    }

    fn poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..6, 0u32..5), -4i64..5), 0..6).prop_map(|terms| {
            terms.into_iter().fold(Poly::new(), |mut p, (k, c)| {
                *p.entry(k).or_insert_with(BigInt::zero) += c;
                p
            })
        })
    }

    fn raw_product(p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::new();
        for (&(a, b), c) in p {
            for (&(d, e), f) in q {
                *out.entry((a + d, b + e)).or_insert_with(BigInt::zero) += c * f;
            }
        }
        out
    }

    proptest! {
        #[test]
        fn defining_relation(a in ambient()) {
            prop_assert_eq!(&total_chern_v2(a) * &(&a.one() + &a.eta()), a.chern_e());
        }

        #[test]
        fn reduction_is_a_ring_map(a in ambient(), p in poly(), q in poly(), r in poly()) {
            let (x, y, z) = (reduce(a, &p), reduce(a, &q), reduce(a, &r));
            prop_assert_eq!(reduce(a, &x.to_poly()), x.clone());
            prop_assert_eq!(reduce(a, &raw_product(&p, &q)), &x * &y);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }

        #[test]
        fn integration_sees_only_degree_five(a in ambient(), p in poly(), d in 0usize..8) {
            let x = reduce(a, &p);
            prop_assert_eq!(integrate(&x), integrate(&x.graded(5)));
            if d != 5 {
                prop_assert!(integrate(&x.graded(d)).is_zero());
            }
        }
    }
}
