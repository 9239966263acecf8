//! Invariant tables for the quotient Y = S/σ of a simply connected compact
//! complex surface S by an involution, either with r isolated fixed points or
//! acting freely.
//!
//! The tables are formula evaluations; `checks` holds the internal bookkeeping
//! (ranks, orders, universal coefficients, Euler characteristic, and group
//! cohomology recomputed from the decomposition).

use std::fmt;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmodule::{decompose, type_string, FreeGModule};
use crate::linalg::{rank, unimodular_inverse, FinAbGroup};
use crate::report::{all_hold, Check};
use crate::synthetic::random_unimodular;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceKind {
    FixedPoints,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariantReport {
    pub kind: SurfaceKind,
    /// `None` when the second Betti number is left symbolic.
    pub h2: Option<usize>,
    /// Isolated fixed points; 0 for a free action.
    pub r: usize,
    pub r0: Option<usize>,
    /// Rank of `H²(S)^G`.
    pub invariant_rank: Option<usize>,
    /// `H_0(Y) .. H_4(Y)`.
    pub homology: Vec<String>,
    /// `H^0(Y) .. H^4(Y)`.
    pub cohomology: Vec<String>,
    /// Local groups around the fixed points: `M ⊆ (Z/2)^r` and the cokernel `N`.
    pub m_group: Option<FinAbGroup>,
    pub n_group: Option<FinAbGroup>,
    /// Cokernel of `π*: H²(Y) → H²(S)^G`.
    pub coker_pullback: Option<FinAbGroup>,
    /// `H¹(G, H²(S))` and `H²(G, H²(S))`.
    pub h1: FinAbGroup,
    pub h2_cohomology: FinAbGroup,
    pub decomposition: String,
    pub checks: Vec<Check>,
}

impl SurfaceInvariantReport {
    pub fn consistent(&self) -> bool {
        all_hold(&self.checks)
    }
}

impl fmt::Display for SurfaceInvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::FixedPoints => writeln!(f, "involution with {} isolated fixed points", self.r)?,
            SurfaceKind::Free => writeln!(f, "fixed-point-free involution")?,
        }
        let opt = |x: Option<usize>| x.map_or_else(|| "symbolic".to_string(), |v| v.to_string());
        writeln!(f, "h2(S) = {}, r0 = {}", opt(self.h2), opt(self.r0))?;
        for (i, (h, c)) in self.homology.iter().zip(&self.cohomology).enumerate() {
            writeln!(f, "  H_{i}(Y) = {h:<24} H^{i}(Y) = {c}")?;
        }
        if let (Some(m), Some(n)) = (&self.m_group, &self.n_group) {
            writeln!(f, "M = {}, N = {}", m, n)?;
        }
        if let Some(c) = &self.coker_pullback {
            writeln!(f, "coker(H²(Y) → H²(S)^G) = {}", c)?;
        }
        writeln!(f, "H¹(G, H²(S)) = {}, H²(G, H²(S)) = {}", self.h1, self.h2_cohomology)?;
        write!(f, "H²(S) ≅ {}", self.decomposition)
    }
}

fn z() -> FinAbGroup {
    FinAbGroup::free(1)
}

fn with_two(free_rank: usize) -> FinAbGroup {
    FinAbGroup {
        free_rank,
        invariant_factors: vec![BigInt::from(2)],
    }
}

fn names(groups: &[FinAbGroup]) -> Vec<String> {
    groups.iter().map(ToString::to_string).collect()
}

/// Checks shared by both kinds, for a known h2 and block type.
fn numeric_checks(
    h2: usize,
    r: usize,
    (r0, rp, rm): (usize, usize, usize),
    homology: &[FinAbGroup],
    cohomology: &[FinAbGroup],
    h1: &FinAbGroup,
    h2c: &FinAbGroup,
) -> Vec<Check> {
    let n = 2 * r0 + rp + rm;
    let inv = r0 + rp;
    let mut checks = vec![Check::with_detail(
        "rank bookkeeping",
        n == h2,
        format!("2·{} + {} + {} = {}", r0, rp, rm, n),
    )];

    // Hide the block form behind a basis change and recover it.
    let mut rng = ChaCha8Rng::seed_from_u64((h2 as u64) << 32 | r as u64);
    let c = random_unimodular(&mut rng, n, 3 * n);
    let b = FreeGModule::from_type(r0, rp, rm);
    let sigma = &(&c * b.sigma()) * &unimodular_inverse(&c).expect("unimodular");
    let module = FreeGModule::new(sigma).expect("conjugate of an involution");
    let recovered = decompose(&module).map(|d| (d.r0, d.r_plus, d.r_minus));
    checks.push(Check::new("decomposition recovered", recovered == Ok((r0, rp, rm))));
    checks.push(Check::new("invariant rank", rank(&module.invariants()) == inv));
    checks.push(Check::with_detail(
        "group cohomology from the decomposition",
        module.cohomology(1) == *h1 && module.cohomology(2) == *h2c,
        format!("H¹ = {}, H² = {}", module.cohomology(1), module.cohomology(2)),
    ));

    let uct = (0..5).all(|i| {
        let tors_prev = if i == 0 {
            FinAbGroup::trivial()
        } else {
            FinAbGroup {
                free_rank: 0,
                ..homology[i - 1].clone()
            }
        };
        cohomology[i] == FinAbGroup::free(homology[i].free_rank).direct_sum(&tors_prev)
    });
    checks.push(Check::new("universal coefficients", uct));

    // e(Y) = (e(S) + r)/2 with e(S) = 2 + h2.
    let euler: i64 = homology
        .iter()
        .enumerate()
        .map(|(i, g)| {
            if i % 2 == 0 {
                g.free_rank as i64
            } else {
                -(g.free_rank as i64)
            }
        })
        .sum();
    let expected = (2 + h2 + r) as i64;
    checks.push(Check::with_detail(
        "euler characteristic",
        2 * euler == expected,
        format!("e(Y) = {}", euler),
    ));
    checks
}

fn fixed_point_groups(r: usize) -> (FinAbGroup, FinAbGroup, FinAbGroup) {
    (
        FinAbGroup::elementary_two(r - 1),
        FinAbGroup::cyclic(2),
        FinAbGroup::elementary_two(r - 2),
    )
}

fn fixed_point_checks(r: usize, m: &FinAbGroup, n: &FinAbGroup, coker: &FinAbGroup, h2c: &FinAbGroup) -> Vec<Check> {
    let product = m.torsion_order() * n.torsion_order();
    vec![
        Check::with_detail(
            "|M|·|N| = 2^r",
            product == BigInt::from(2).pow(r as u32),
            format!("{}", product),
        ),
        Check::new("pullback cokernel matches H²(G, H²(S))", coker == h2c),
    ]
}

fn validate_fixed(h2: usize, r: usize) -> Result<usize> {
    match r {
        0 => return Err(Error::Precondition("r = 0 is the fixed-point-free case".into())),
        1 => {
            return Err(Error::Precondition(
                "an involution with isolated fixed points has at least two of them (r ≥ 2)".into(),
            ))
        }
        _ => {}
    }
    if (h2 + r) % 2 != 0 {
        return Err(Error::Precondition(format!(
            "h2 and r must have the same parity: r0 = ({} − {} + 2)/2 is not an integer",
            h2, r
        )));
    }
    if h2 + 2 < r {
        return Err(Error::Precondition(format!(
            "h2 = {} is smaller than r − 2 = {}",
            h2,
            r - 2
        )));
    }
    Ok((h2 + 2 - r) / 2)
}

/// Report for an involution with `r` isolated fixed points on a surface with `b₂ = h2`.
pub fn surface_structure_fixed_points(h2: usize, r: usize) -> Result<SurfaceInvariantReport> {
    let r0 = validate_fixed(h2, r)?;
    let inv = r0 + r - 2;
    let homology = vec![z(), FinAbGroup::trivial(), with_two(inv), FinAbGroup::trivial(), z()];
    let cohomology = vec![
        z(),
        FinAbGroup::trivial(),
        FinAbGroup::free(inv),
        FinAbGroup::cyclic(2),
        z(),
    ];
    let (m, n, coker) = fixed_point_groups(r);
    let h1 = FinAbGroup::trivial();
    let h2c = FinAbGroup::elementary_two(r - 2);
    let mut checks = numeric_checks(h2, r, (r0, r - 2, 0), &homology, &cohomology, &h1, &h2c);
    checks.extend(fixed_point_checks(r, &m, &n, &coker, &h2c));
    Ok(SurfaceInvariantReport {
        kind: SurfaceKind::FixedPoints,
        h2: Some(h2),
        r,
        r0: Some(r0),
        invariant_rank: Some(inv),
        homology: names(&homology),
        cohomology: names(&cohomology),
        m_group: Some(m),
        n_group: Some(n),
        coker_pullback: Some(coker),
        h1,
        h2_cohomology: h2c,
        decomposition: type_string(r0, r - 2, 0),
        checks,
    })
}

/// Same report with `h2` unknown: only the parts that depend on r alone are concrete.
pub fn surface_structure_fixed_points_symbolic(r: usize) -> Result<SurfaceInvariantReport> {
    // h2 = r is the smallest value with the right parity; it only feeds validation.
    validate_fixed(r, r)?;
    let (m, n, coker) = fixed_point_groups(r);
    // Z[G] summands have no cohomology, so one of them stands in for all.
    let module = FreeGModule::from_type(1, r - 2, 0);
    let h1 = module.cohomology(1);
    let h2c = module.cohomology(2);
    let mut checks = vec![Check::new("no H¹ from Z[G] ⊕ Z₊", h1.is_trivial())];
    checks.extend(fixed_point_checks(r, &m, &n, &coker, &h2c));
    let s = |x: &str| x.to_string();
    Ok(SurfaceInvariantReport {
        kind: SurfaceKind::FixedPoints,
        h2: None,
        r,
        r0: None,
        invariant_rank: None,
        homology: vec![s("Z"), s("0"), s("Z/2 ⊕ H²(S)^G"), s("0"), s("Z")],
        cohomology: vec![
            s("Z"),
            s("0"),
            format!("sublattice of H²(S)^G of index 2^{}", r - 2),
            s("Z/2"),
            s("Z"),
        ],
        m_group: Some(m),
        n_group: Some(n),
        coker_pullback: Some(coker),
        h1,
        h2_cohomology: h2c,
        decomposition: format!("Z[G]^((h2 − {})/2) ⊕ {}", r - 2, type_string(0, r - 2, 0)),
        checks,
    })
}

/// Report for a free involution on a surface with `b₂ = h2`.
pub fn surface_structure_free(h2: usize) -> Result<SurfaceInvariantReport> {
    if h2 % 2 != 0 {
        return Err(Error::Precondition(format!(
            "a surface with a free involution has even b₂, got {}",
            h2
        )));
    }
    if h2 < 2 {
        return Err(Error::Precondition("a free involution needs b₂ ≥ 2".into()));
    }
    let r0 = (h2 - 2) / 2;
    let homology = vec![z(), FinAbGroup::cyclic(2), with_two(r0), FinAbGroup::trivial(), z()];
    let cohomology = vec![z(), FinAbGroup::trivial(), with_two(r0), FinAbGroup::cyclic(2), z()];
    let h1 = FinAbGroup::elementary_two(2);
    let h2c = FinAbGroup::trivial();
    let checks = numeric_checks(h2, 0, (r0, 0, 2), &homology, &cohomology, &h1, &h2c);
    Ok(SurfaceInvariantReport {
        kind: SurfaceKind::Free,
        h2: Some(h2),
        r: 0,
        r0: Some(r0),
        invariant_rank: Some(r0),
        homology: names(&homology),
        cohomology: names(&cohomology),
        m_group: None,
        n_group: None,
        coker_pullback: None,
        h1,
        h2_cohomology: h2c,
        decomposition: type_string(r0, 0, 2),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_two() {
        let rep = surface_structure_fixed_points(6, 2).unwrap();
        assert_eq!(rep.r0, Some(3));
        assert_eq!(rep.decomposition, "Z[G]^3");
        assert_eq!(rep.m_group, Some(FinAbGroup::cyclic(2)));
        assert_eq!(rep.coker_pullback, Some(FinAbGroup::trivial()));
        assert_eq!(rep.homology[2], "Z^3 ⊕ Z/2");
        assert!(rep.consistent(), "{:?}", rep.checks);
    }

    #[test]
    fn sixteen_points_symbolic() {
        let rep = surface_structure_fixed_points_symbolic(16).unwrap();
        assert_eq!(rep.h2_cohomology, FinAbGroup::elementary_two(14));
        assert_eq!(rep.m_group, Some(FinAbGroup::elementary_two(15)));
        assert!(rep.consistent());
        assert!(surface_structure_fixed_points_symbolic(1).is_err());
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            surface_structure_fixed_points(5, 2),
            Err(Error::Precondition(_))
        ));
        assert!(surface_structure_fixed_points(10, 1).is_err());
        assert!(surface_structure_fixed_points(10, 0).is_err());
        assert!(surface_structure_fixed_points(2, 6).is_err());
        assert!(surface_structure_free(7).is_err());
        assert!(surface_structure_free(0).is_err());
    }

    #[test]
    fn free_cases() {
        let rep = surface_structure_free(22).unwrap();
        assert_eq!(rep.decomposition, "Z[G]^10 ⊕ Z₋^2");
        assert_eq!(rep.homology[1], "Z/2");
        assert!(rep.consistent(), "{:?}", rep.checks);
        let rep = surface_structure_free(2).unwrap();
        assert_eq!(rep.decomposition, "Z₋^2");
        assert_eq!(rep.h1, FinAbGroup::elementary_two(2));
        assert!(rep.consistent());
    }

    #[test]
    fn display_mentions_the_table() {
        let text = surface_structure_fixed_points(22, 16).unwrap().to_string();
        assert!(text.contains("H_2(Y) = Z^18 ⊕ Z/2"), "{}", text);
    }
}
