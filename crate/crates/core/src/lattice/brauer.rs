//! Transcendental quotients and the two short exact sequences for the Prym
//! part of the Brauer group, checked at a finite level n.
//!
//! With T = L/Hdg, A = T(M^⊥)^{σ=−1} = π(M^⊥) ∩ T^{σ=−1} and
//! A₂ = T((M^⊥)^{σ=−1}) = π((M^⊥)^{σ=−1}), the inclusions A₂ ⊆ A ⊆ T^{σ=−1}
//! have finite cokernels C = T(Q_M)^{σ=−1} and K, and tensoring with Q/Z turns
//! them into the short exact sequences. At level n the tensor with (1/n)Z/Z
//! of an inclusion J of full rank has kernel coker(J)[n] and cokernel
//! coker(J)/n, and becomes onto after passing to level n·exponent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::InvolutionLattice;
use crate::error::{Error, Result};
use crate::gmodule::{torsion_prym_check, FiniteGModule, FreeGModule, Quotient, TorsionPrymReport};
use crate::linalg::{
    canonical_basis, cokernel_structure, coordinates, kernel_basis, lattice_intersection, quotient_structure,
    span_contains, FinAbGroup, IntegerMatrix,
};
use crate::report::{all_hold, Check, Verdict};

/// `T = L/Hdg` together with `H¹(G, L) → H¹(G, T)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerReport {
    pub transcendental_rank: usize,
    pub h1_lattice: FinAbGroup,
    pub h1_transcendental: FinAbGroup,
    /// Cokernel of `H¹(G, L) → H¹(G, T)`.
    pub k: FinAbGroup,
}

fn transcendental(l: &InvolutionLattice, hdg: &IntegerMatrix) -> Result<Quotient> {
    l.check_sublattice(hdg)?;
    l.module().quotient(hdg)
}

/// `T^{σ=−1} / (π(L^{σ=−1}) + (σ_T − 1)T)`.
fn k_of(l: &InvolutionLattice, t: &Quotient) -> Result<FinAbGroup> {
    let t_anti = t.module.anti_invariants();
    let image = (&t.projection * &l.anti_invariants()).hstack(&t.module.sigma_minus_one())?;
    quotient_structure(&t_anti, &image)
}

pub fn brauer_k(l: &InvolutionLattice, hdg: &IntegerMatrix) -> Result<FinAbGroup> {
    let t = transcendental(l, hdg)?;
    k_of(l, &t)
}

pub fn brauer_report(l: &InvolutionLattice, hdg: &IntegerMatrix) -> Result<BrauerReport> {
    let t = transcendental(l, hdg)?;
    Ok(BrauerReport {
        transcendental_rank: t.module.rank(),
        h1_lattice: l.module().cohomology(1),
        h1_transcendental: t.module.cohomology(1),
        k: k_of(l, &t)?,
    })
}

/// An inclusion `Z^a → Z^a` of full rank, tensored with `(1/n)Z/Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub cokernel: FinAbGroup,
    pub kernel_at_level: FinAbGroup,
    pub cokernel_at_level: FinAbGroup,
    pub checks: Vec<Check>,
}

impl LevelReport {
    pub fn holds(&self) -> bool {
        all_hold(&self.checks)
    }
}

fn level_report(j: &IntegerMatrix, n: u64) -> Result<LevelReport> {
    let a = j.rows();
    if j.cols() != a {
        return Err(Error::Internal(format!("level map is {}x{}", j.rows(), j.cols())));
    }
    let nb = BigInt::from(n);
    let cokernel = cokernel_structure(j);
    let n_i = IntegerMatrix::identity(a).scaled(&nb);
    // {x : Jx ∈ nZ^a} / nZ^a
    let ker_lattice = canonical_basis(&kernel_basis(&j.hstack(&-&n_i)?).rows_range(0, a));
    let kernel_at_level = quotient_structure(&ker_lattice, &n_i)?;
    let image = j.hstack(&n_i)?;
    let cokernel_at_level = cokernel_structure(&image);
    let image_order = quotient_structure(&IntegerMatrix::identity(a), &image)
        .ok()
        .and_then(|g| g.order())
        .map(|c| nb.pow(a as u32) / c);
    let ker_order = kernel_at_level.order();
    let order_count = match (&ker_order, &image_order) {
        (Some(k), Some(i)) => k * i == nb.pow(a as u32),
        _ => false,
    };
    let finite = cokernel.is_finite();
    let e = if cokernel.is_trivial() {
        BigInt::one()
    } else {
        cokernel.exponent()
    };
    let lifted = j.hstack(&IntegerMatrix::identity(a).scaled(&(&nb * &e)))?;
    let onto_in_limit = finite && span_contains(&lifted, &IntegerMatrix::identity(a).scaled(&e));
    let checks = vec![
        Check::with_detail(
            "kernel ≅ coker[n]",
            kernel_at_level == cokernel.n_torsion(&nb),
            kernel_at_level.to_string(),
        ),
        Check::with_detail(
            "cokernel ≅ coker/n",
            cokernel_at_level == cokernel.mod_n(&nb),
            cokernel_at_level.to_string(),
        ),
        Check::new("|ker|·|im| = n^rank", order_count),
        Check::new("onto after raising the level by the exponent", onto_in_limit),
    ];
    Ok(LevelReport {
        cokernel,
        kernel_at_level,
        cokernel_at_level,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub claim: &'static str,
    pub level: u64,
    pub transcendental_rank: usize,
    pub anti_invariant_rank: usize,
    /// `T(Q_M)^{σ=−1}`.
    pub t_q_minus: FinAbGroup,
    pub k: FinAbGroup,
    pub h1_lattice: FinAbGroup,
    pub h1_transcendental: FinAbGroup,
    /// `T(M^⊥)^{σ=−1} ⊆ T^{σ=−1}`; its cokernel should be `T(Q_M)^{σ=−1}`.
    pub first: LevelReport,
    /// `T((M^⊥)^{σ=−1}) ⊆ T(M^⊥)^{σ=−1}`; its cokernel should be K.
    pub second: LevelReport,
    /// The composite; its cokernel should be `K ⊕ T(Q_M)^{σ=−1}`.
    pub combined: LevelReport,
    pub torsion_lemma: TorsionPrymReport,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

const CLAIM: &str = "short exact sequences for the Prym part of the Brauer group, at level n";

pub fn verify_brauer_sequences(
    l: &InvolutionLattice,
    hdg: &IntegerMatrix,
    m: &IntegerMatrix,
    n: u64,
) -> Result<SequenceReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("level must be at least 2, got {}", n)));
    }
    l.check_sublattice(m)?;
    let det_m = l.base().restrict(m)?.determinant();
    if det_m.is_even() {
        return Err(Error::Precondition(format!("det(M) = {} must be odd", det_m)));
    }
    if !span_contains(hdg, m) {
        return Err(Error::Precondition("M is not contained in Hdg".into()));
    }
    let t = transcendental(l, hdg)?;
    let perp = l.orthogonal_complement(m)?;
    let q_m = quotient_structure(&IntegerMatrix::identity(l.rank()), &m.hstack(&perp)?)?;
    if q_m.torsion_order().is_even() || !q_m.is_finite() {
        return Err(Error::Precondition(format!(
            "L/(M ⊕ M^⊥) = {} must have odd order",
            q_m
        )));
    }

    // C = (L / (M^⊥ + Hdg))^{σ=−1}
    let (quot, _) = FiniteGModule::from_quotient(l.sigma(), &canonical_basis(&perp.hstack(hdg)?))?;
    let t_q_minus = quot.minus_part();

    let t_anti = t.module.anti_invariants();
    let pi_perp = &t.projection * &perp;
    let a_lattice = lattice_intersection(&pi_perp, &t_anti)?;
    let j1 = coordinates(&t_anti, &a_lattice)?;
    let perp_module = FreeGModule::new(coordinates(&perp, &(l.sigma() * &perp))?)?;
    let perp_anti = &perp * &perp_module.anti_invariants();
    let a2_lattice = canonical_basis(&(&t.projection * &perp_anti));
    let j2 = coordinates(&a_lattice, &a2_lattice)?;
    if j1.rows() != j1.cols() || j2.rows() != j2.cols() {
        return Err(Error::Internal(
            "transcendental sublattices are not of full rank".into(),
        ));
    }

    let k = k_of(l, &t)?;
    let first = level_report(&j1, n)?;
    let second = level_report(&j2, n)?;
    let combined = level_report(&(&j1 * &j2), n)?;
    let torsion_lemma = torsion_prym_check(&t.module, n)?;
    let h1_lattice = l.module().cohomology(1);
    let h1_transcendental = t.module.cohomology(1);

    let mut checks = vec![
        Check::with_detail(
            "coker(T(M^⊥)^- → T^-) ≅ T(Q_M)^-",
            first.cokernel == t_q_minus,
            first.cokernel.to_string(),
        ),
        Check::with_detail(
            "coker(T((M^⊥)^-) → T(M^⊥)^-) ≅ K",
            second.cokernel == k,
            second.cokernel.to_string(),
        ),
        Check::with_detail(
            "coker of the composite ≅ K ⊕ T(Q_M)^-",
            combined.cokernel == k.direct_sum(&t_q_minus),
            combined.cokernel.to_string(),
        ),
        Check::new("level-n exactness, first sequence", first.holds()),
        Check::new("level-n exactness, second sequence", second.holds()),
        Check::new("level-n exactness, combined sequence", combined.holds()),
        Check::new("T^- ⊗ Q/Z = Pr(T ⊗ Q/Z) at level n", torsion_lemma.equal),
    ];
    if h1_lattice.is_trivial() {
        checks.push(Check::new("K ≅ H¹(G,T) when H¹(G,L) = 0", k == h1_transcendental));
    }
    let verdict = Verdict::from_bool(all_hold(&checks));
    Ok(SequenceReport {
        claim: CLAIM,
        level: n,
        transcendental_rank: t.module.rank(),
        anti_invariant_rank: t_anti.cols(),
        t_q_minus,
        k,
        h1_lattice,
        h1_transcendental,
        first,
        second,
        combined,
        torsion_lemma,
        checks,
        verdict,
    })
}
