//! `--sweep N`: run a verifier on N synthetic instances, seeds `seed..seed+N`,
//! in parallel. The summary depends only on the seeds, not on scheduling.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use prymlat::lattice::{
    canonical_instance, verify_brauer_sequences, verify_det_formula, verify_prym_correspondence, verify_rank_formula,
    Mode,
};
use prymlat::report::Verdict;
use prymlat::synthetic::{
    find_odd_sublattice, fixed_point_surface, free_surface, h1_free_lattice, random_hodge_lattice,
};
use prymlat::IntegerMatrix;

use crate::args::SweepArgs;
use crate::{Outcome, Status};

pub(crate) enum SweepKind {
    Rank(Mode),
    Det(Mode),
    Correspondence { r: usize },
    Brauer { levels: Vec<u64> },
}

enum Trial {
    Done(Verdict),
    /// The generator found no odd-determinant sublattice for this seed.
    Skipped,
    Error(String),
}

fn worst(a: Verdict, b: Verdict) -> Verdict {
    let rank = |v: Verdict| match v {
        Verdict::Verified => 0,
        Verdict::OutOfScope => 1,
        Verdict::HypothesesNotMet => 2,
        Verdict::Failed => 3,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn trial(kind: &SweepKind, r0: usize, seed: u64) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let result = match kind {
        SweepKind::Rank(mode) | SweepKind::Det(mode) => {
            let l = match mode {
                Mode::FixedPoints { r } => fixed_point_surface(&mut rng, r0, *r),
                Mode::Free => free_surface(&mut rng, r0),
            };
            let Some(m) = find_odd_sublattice(&mut rng, &l, 1 + (seed % 2) as usize, 2, 50) else {
                return Trial::Skipped;
            };
            if let SweepKind::Rank(_) = kind {
                verify_rank_formula(&l, &m, *mode).map(|r| r.verdict)
            } else {
                verify_det_formula(&l, &m, *mode).map(|r| r.verdict)
            }
        }
        SweepKind::Correspondence { r } => {
            let w = fixed_point_surface(&mut rng, r0, *r);
            canonical_instance(&w).and_then(|(lx, phi, psi)| {
                verify_prym_correspondence(&lx, &w, &IntegerMatrix::zeros(w.rank(), 0), &phi, &psi).map(|r| r.verdict)
            })
        }
        SweepKind::Brauer { levels } => {
            let l = h1_free_lattice(&mut rng, r0, 2);
            let Some(m) = find_odd_sublattice(&mut rng, &l, 1, 2, 50) else {
                return Trial::Skipped;
            };
            let hdg = random_hodge_lattice(&mut rng, &l, &m, 1, 2);
            levels.iter().try_fold(Verdict::Verified, |acc, &n| {
                verify_brauer_sequences(&l, &hdg, &m, n).map(|r| worst(acc, r.verdict))
            })
        }
    };
    match result {
        Ok(v) => Trial::Done(v),
        Err(e) => Trial::Error(e.to_string()),
    }
}

pub(crate) fn sweep(kind: SweepKind, args: &SweepArgs, count: usize) -> Outcome {
    let seeds: Vec<u64> = (0..count as u64).map(|i| args.seed + i).collect();
    let trials: Vec<(u64, Trial)> = seeds.par_iter().map(|&s| (s, trial(&kind, args.r0, s))).collect();

    let count_of = |v: Verdict| {
        trials
            .iter()
            .filter(|(_, t)| matches!(t, Trial::Done(x) if *x == v))
            .count()
    };
    let failing: Vec<u64> = trials
        .iter()
        .filter(|(_, t)| matches!(t, Trial::Done(Verdict::Failed)))
        .map(|(s, _)| *s)
        .collect();
    let errors: Vec<_> = trials
        .iter()
        .filter_map(|(s, t)| match t {
            Trial::Error(e) => Some(json!({ "seed": s, "error": e })),
            _ => None,
        })
        .collect();
    let skipped = trials.iter().filter(|(_, t)| matches!(t, Trial::Skipped)).count();
    let verified = count_of(Verdict::Verified);

    // Generated instances are valid by construction, so an error is as bad as a failure.
    let status = if !failing.is_empty() || !errors.is_empty() {
        Status::Failed
    } else if verified == 0 {
        Status::Inapplicable
    } else {
        Status::Ok
    };
    let value = json!({
        "instances": count,
        "first_seed": args.seed,
        "r0": args.r0,
        "verified": verified,
        "failed": failing.len(),
        "hypotheses_not_met": count_of(Verdict::HypothesesNotMet),
        "out_of_scope": count_of(Verdict::OutOfScope),
        "skipped": skipped,
        "failing_seeds": failing,
        "errors": errors,
    });
    Outcome::report(value, status)
}
