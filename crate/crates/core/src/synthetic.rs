//! Random instances with known structure, for property tests and sweeps.
//!
//! Everything is driven by a caller-supplied RNG so runs are reproducible
//! from a seed.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;

use crate::gmodule::{canonical_block_form, FreeGModule};
use crate::lattice::InvolutionLattice;
use crate::linalg::{rank, unimodular_inverse, IntegerMatrix};

/// Product of `steps` random elementary column operations.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize, steps: usize) -> IntegerMatrix {
    let mut c = IntegerMatrix::identity(n);
    if n == 0 {
        return c;
    }
    for _ in 0..steps {
        match rng.gen_range(0..8) {
            0 if n > 1 => {
                let (i, j) = distinct_pair(rng, n);
                c.swap_cols(i, j);
            }
            1 => c.negate_col(rng.gen_range(0..n)),
            _ if n > 1 => {
                let (i, j) = distinct_pair(rng, n);
                let k = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=2);
                c.add_col_multiple(i, j, &BigInt::from(k));
            }
            _ => {}
        }
    }
    c
}

fn distinct_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// `σ = C B C⁻¹` for the block form B of type (r0, r+, r−) and a random unimodular C.
/// The columns of C are an adapted basis for σ.
pub fn random_involution<R: Rng + ?Sized>(
    rng: &mut R,
    r0: usize,
    r_plus: usize,
    r_minus: usize,
) -> (FreeGModule, IntegerMatrix) {
    let n = 2 * r0 + r_plus + r_minus;
    let c = random_unimodular(rng, n, 3 * n);
    let b = canonical_block_form(r0, r_plus, r_minus);
    let sigma = &(&c * &b) * &unimodular_inverse(&c).expect("unimodular by construction");
    (FreeGModule::new(sigma).expect("conjugate of an involution"), c)
}

/// The same lattice in a random basis: Gram `CᵀGC`, action `C⁻¹σC`.
pub fn change_basis<R: Rng + ?Sized>(
    rng: &mut R,
    l: &InvolutionLattice,
    steps: usize,
) -> (InvolutionLattice, IntegerMatrix) {
    let c = random_unimodular(rng, l.rank(), steps);
    let ci = unimodular_inverse(&c).expect("unimodular by construction");
    let gram = &(&c.transpose() * l.gram()) * &c;
    let sigma = &(&ci * l.sigma()) * &c;
    (
        InvolutionLattice::new(gram, sigma).expect("isometric change of basis"),
        c,
    )
}

fn random_signs<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<i64> {
    (0..k).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect()
}

/// Unimodular lattice of fixed-point surface type: r0 swapped hyperbolic planes
/// and `r − 2` invariant `⟨±1⟩`, in a random basis.
pub fn fixed_point_surface<R: Rng + ?Sized>(rng: &mut R, r0: usize, r: usize) -> InvolutionLattice {
    let plus = random_signs(rng, r.saturating_sub(2));
    let base = InvolutionLattice::hyperbolic_swap(r0, &plus, &[]);
    change_basis(rng, &base, 2 * base.rank()).0
}

/// Unimodular lattice of free surface type: r0 swapped hyperbolic planes and two `⟨±1⟩₋`.
pub fn free_surface<R: Rng + ?Sized>(rng: &mut R, r0: usize) -> InvolutionLattice {
    let minus = random_signs(rng, 2);
    let base = InvolutionLattice::hyperbolic_swap(r0, &[], &minus);
    change_basis(rng, &base, 2 * base.rank()).0
}

/// σ-stable saturated sublattice generated by `count` random vectors with
/// entries in `[-bound, bound]`, when it has full rank in its span and odd
/// nonzero determinant.
pub fn random_odd_sublattice<R: Rng + ?Sized>(
    rng: &mut R,
    l: &InvolutionLattice,
    count: usize,
    bound: i64,
) -> Option<IntegerMatrix> {
    let n = l.rank();
    let gens: Vec<Vec<BigInt>> = (0..count)
        .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    let gens = IntegerMatrix::from_columns(&gens, n).ok()?;
    if rank(&gens) == 0 {
        return None;
    }
    let m = l.stable_saturation(&gens).ok()?;
    let det = l.base().restrict(&m).ok()?.determinant();
    det.is_odd().then_some(m)
}

/// Retries [`random_odd_sublattice`] up to `tries` times.
pub fn find_odd_sublattice<R: Rng + ?Sized>(
    rng: &mut R,
    l: &InvolutionLattice,
    count: usize,
    bound: i64,
    tries: usize,
) -> Option<IntegerMatrix> {
    (0..tries).find_map(|_| random_odd_sublattice(rng, l, count, bound))
}

/// A σ-stable saturated sublattice containing `m` plus `extra` random vectors.
pub fn random_hodge_lattice<R: Rng + ?Sized>(
    rng: &mut R,
    l: &InvolutionLattice,
    m: &IntegerMatrix,
    extra: usize,
    bound: i64,
) -> IntegerMatrix {
    let n = l.rank();
    let gens: Vec<Vec<BigInt>> = (0..extra)
        .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
        .collect();
    let gens = IntegerMatrix::from_columns(&gens, n).expect("dimensions match");
    l.stable_saturation(&m.hstack(&gens).expect("same ambient"))
        .expect("same ambient")
}

/// Lattice with `H¹(G, W) = 0`: swapped hyperbolic planes plus invariant `⟨±1⟩`, random basis.
pub fn h1_free_lattice<R: Rng + ?Sized>(rng: &mut R, r0: usize, r_plus: usize) -> InvolutionLattice {
    let plus = random_signs(rng, r_plus);
    let base = InvolutionLattice::hyperbolic_swap(r0, &plus, &[]);
    change_basis(rng, &base, 2 * base.rank()).0
}
