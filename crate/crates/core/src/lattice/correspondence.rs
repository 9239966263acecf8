//! Abstract Prym correspondence: `Φ: Λ_X → W` and `Ψ: W → Λ_X` with
//! `ΨΦ = −2`, `ΦΨ = σ−1` on `M^⊥` and `H¹(G, M^⊥) = 0` should make Φ an
//! isometry `Λ_X(−1) ≅ Pr(M^⊥, σ)` for the halved form.

use num_bigint::BigInt;
use serde::Serialize;

use super::{prym_lattice, BilinearLattice, InvolutionLattice};
use crate::error::{Error, Result};
use crate::linalg::{rank, same_span, IntegerMatrix};
use crate::report::{all_hold, Check, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub claim: &'static str,
    pub rank_x: usize,
    pub rank_w: usize,
    pub prym_rank: usize,
    /// (a), (b), (c).
    pub hypotheses: Vec<Check>,
    /// Injectivity, image, form relation. Only evaluated when all hypotheses hold.
    pub conclusions: Vec<Check>,
    pub verdict: Verdict,
}

const CLAIM: &str = "Φ is an isomorphism onto Pr(M^⊥,σ) with ⟨Φx,Φy⟩ = −(x·y)";

pub fn verify_prym_correspondence(
    lambda_x: &BilinearLattice,
    w: &InvolutionLattice,
    m: &IntegerMatrix,
    phi: &IntegerMatrix,
    psi: &IntegerMatrix,
) -> Result<CorrespondenceReport> {
    let (nx, nw) = (lambda_x.rank(), w.rank());
    if phi.rows() != nw || phi.cols() != nx {
        return Err(Error::Shape(format!(
            "Φ must be {}x{}, got {}x{}",
            nw,
            nx,
            phi.rows(),
            phi.cols()
        )));
    }
    if psi.rows() != nx || psi.cols() != nw {
        return Err(Error::Shape(format!(
            "Ψ must be {}x{}, got {}x{}",
            nx,
            nw,
            psi.rows(),
            psi.cols()
        )));
    }
    let prym = prym_lattice(w, m)?;
    let perp = &prym.complement;
    if !(&m.transpose() * &(w.gram() * phi)).is_zero() {
        return Err(Error::Precondition("Φ does not map into M^⊥".into()));
    }

    let minus_two = IntegerMatrix::identity(nx).scaled(&BigInt::from(-2));
    let a = psi.checked_mul(phi)? == minus_two;
    let s = w.sigma() - &IntegerMatrix::identity(nw);
    let b = &(phi * psi) * perp == &s * perp;
    let h1 = w.restrict(perp)?.module().cohomology(1);
    let hypotheses = vec![
        Check::new("(a) ΨΦ = −2 on Λ_X", a),
        Check::new("(b) ΦΨ = σ−1 on M^⊥", b),
        Check::with_detail("(c) H¹(G,M^⊥) = 0", h1.is_trivial(), format!("H¹(G,M^⊥) = {}", h1)),
    ];
    let mut report = CorrespondenceReport {
        claim: CLAIM,
        rank_x: nx,
        rank_w: nw,
        prym_rank: prym.rank(),
        hypotheses,
        conclusions: vec![],
        verdict: Verdict::Failed,
    };
    if !all_hold(&report.hypotheses) {
        return Ok(report);
    }

    let injective = rank(phi) == nx;
    let image = same_span(phi, &prym.basis);
    let pulled = &(&phi.transpose() * w.gram()) * phi;
    let form = pulled == lambda_x.gram().scaled(&BigInt::from(-2));
    report.conclusions = vec![
        Check::new("Φ injective", injective),
        Check::new("Φ(Λ_X) = Pr(M^⊥,σ)", image),
        Check::new("⟨Φx,Φy⟩ = −(x·y)", form),
    ];
    report.verdict = Verdict::from_bool(all_hold(&report.conclusions));
    Ok(report)
}

/// The canonical instance on W with M = 0: Λ_X = Pr(W) with minus the halved
/// form, Φ the inclusion and Ψ = σ−1 in Prym coordinates.
pub fn canonical_instance(w: &InvolutionLattice) -> Result<(BilinearLattice, IntegerMatrix, IntegerMatrix)> {
    let m = IntegerMatrix::zeros(w.rank(), 0);
    let prym = prym_lattice(w, &m)?;
    let s = w.sigma() - &IntegerMatrix::identity(w.rank());
    let psi = crate::linalg::coordinates(&prym.basis, &s)?;
    let lambda_x = BilinearLattice::new(-&prym.halved_gram)?;
    Ok((lambda_x, prym.basis, psi))
}
