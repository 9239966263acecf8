//! Concrete instances: invariant tables for quotients of surfaces by an
//! involution, the cubic fourfold lattices, the degree 14 K3 data and the
//! conic bundle parity identity.

mod conic;
mod cubic;
mod k3;
mod surface;

pub use conic::{conic_bundle_prym_parity, ConicParityReport};
pub use cubic::{
    cubic_fourfold_ambient, cubic_fourfold_facts, cubic_fourfold_m, cubic_picard3, picard3_embedding,
    picard3_prediction, verify_picard3, CubicFacts, Picard3Case, Picard3Embedding, Picard3Report, CUBIC_FIXED_POINTS,
    CUBIC_PRIMITIVE_RANK,
};
pub use k3::{beauville_donagi, e8_cartan, BeauvilleDonagi};
pub use surface::{
    surface_structure_fixed_points, surface_structure_fixed_points_symbolic, surface_structure_free,
    SurfaceInvariantReport, SurfaceKind,
};
