//! Exact integer lattices with an involution.
//!
//! The crate is layered bottom-up: [`linalg`] (Smith/Hermite forms over
//! arbitrary-precision integers), [`gmodule`] (modules over the group ring of
//! the group of order two and their cohomology), [`lattice`] (bilinear forms,
//! discriminant groups, Prym sublattices and the formula verifiers), and the
//! independent calculators [`bundle`] and [`chow`]. [`presets`] bundles the
//! concrete instances; [`synthetic`] generates random test instances.

pub mod bundle;
pub mod chow;
pub mod error;
pub mod format;
pub mod gmodule;
pub mod lattice;
pub mod linalg;
pub mod presets;
pub mod report;
pub mod synthetic;

pub use error::{Error, Result};
pub use linalg::{FinAbGroup, IntegerMatrix};
