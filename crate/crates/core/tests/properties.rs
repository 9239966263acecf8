use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prymlat::lattice::{canonical_instance, discriminant_group, prym_lattice, verify_prym_correspondence, Sign};
use prymlat::report::Verdict;
use prymlat::synthetic::{find_odd_sublattice, fixed_point_surface, free_surface, h1_free_lattice};
use prymlat::IntegerMatrix;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modification_along_eigenvectors_keeps_sigma(seed in any::<u64>(), r0 in 1usize..3, r in 2usize..5, plus in any::<bool>()) {
        let l = fixed_point_surface(&mut rng(seed), r0, r);
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        for eigen in [l.invariants(), l.anti_invariants()] {
            for j in 0..eigen.cols() {
                let x = eigen.column(j);
                let Ok(m) = l.base().modify(&x, sign) else { continue };
                let g = m.gram();
                prop_assert_eq!(&(&l.sigma().transpose() * g) * l.sigma(), g.clone());
            }
        }
    }

    #[test]
    fn halved_prym_form_is_integral(seed in any::<u64>(), r0 in 1usize..4, r in 2usize..6, free in any::<bool>()) {
        let mut g = rng(seed);
        let l = if free { free_surface(&mut g, r0) } else { fixed_point_surface(&mut g, r0, r) };
        let m = find_odd_sublattice(&mut g, &l, 1, 2, 20).unwrap_or_else(|| IntegerMatrix::zeros(l.rank(), 0));
        let p = prym_lattice(&l, &m).unwrap();
        let full = &(&p.basis.transpose() * l.gram()) * &p.basis;
        prop_assert_eq!(p.halved_gram.scaled(&BigInt::from(2)), full);
    }

    #[test]
    fn discriminant_order_and_split(seed in any::<u64>(), r0 in 1usize..4, r in 2usize..6, count in 1usize..3) {
        let mut g = rng(seed);
        let l = fixed_point_surface(&mut g, r0, r);
        let Some(m) = find_odd_sublattice(&mut g, &l, count, 3, 20) else { return Ok(()) };
        let q = discriminant_group(&l, &m).unwrap();
        let det = l.base().restrict(&m).unwrap().determinant();
        prop_assert_eq!(q.order(), det.abs());
        prop_assert!(det.is_odd());
        let (plus, minus) = (q.plus_part.clone().unwrap(), q.minus_part.clone().unwrap());
        prop_assert_eq!(plus.torsion_order() * minus.torsion_order(), q.order());
    }

    #[test]
    fn canonical_correspondence_passes(seed in any::<u64>(), r0 in 1usize..4, extra in 0usize..4, fixed in any::<bool>()) {
        let mut g = rng(seed);
        let w = if fixed { fixed_point_surface(&mut g, r0, extra + 2) } else { h1_free_lattice(&mut g, r0, extra) };
        prop_assume!(w.rank() <= 10);
        prop_assert!(w.module().cohomology(1).is_trivial());
        let (lx, phi, psi) = canonical_instance(&w).unwrap();
        let r = verify_prym_correspondence(&lx, &w, &IntegerMatrix::zeros(w.rank(), 0), &phi, &psi).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Verified);
    }
}

#[test]
fn even_order_discriminant_reports_no_split() {
    // Z[G] with Gram 2·I: det 4, no eigen-split.
    let l = prymlat::lattice::InvolutionLattice::new(
        IntegerMatrix::from_i64(&[[2, 0], [0, 2]]),
        IntegerMatrix::from_i64(&[[0, 1], [1, 0]]),
    )
    .unwrap();
    let q = discriminant_group(&l, &IntegerMatrix::identity(2)).unwrap();
    assert!(!q.split_available());
    assert!(q.order().is_even() && !q.order().is_zero());
}
