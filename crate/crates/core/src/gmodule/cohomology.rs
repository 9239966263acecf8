//! Cohomology of the group of order two:
//! H⁰ = M^G, H^odd = ker(σ+1)/im(σ−1), H^even = ker(σ−1)/im(σ+1).

use super::FreeGModule;
use crate::linalg::{cokernel_structure, coordinates, FinAbGroup};

pub(super) fn free_cohomology(m: &FreeGModule, degree: usize) -> FinAbGroup {
    if degree == 0 {
        return FinAbGroup::free(m.invariants().cols());
    }
    let (kernel, image) = if degree % 2 == 1 {
        (m.anti_invariants(), m.sigma_minus_one())
    } else {
        (m.invariants(), m.sigma_plus_one())
    };
    let coords = coordinates(&kernel, &image).expect("(σ∓1)M lies in ker(σ±1)");
    cokernel_structure(&coords)
}
