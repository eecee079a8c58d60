//! Spherical equations `∏ zᵢ⁻¹·cᵢ·zᵢ = 1` over finite groups: decision
//! procedures, constructive solvers, hardness reductions and a brute-force
//! oracle.

pub mod cayley;
pub mod dihedral;
pub mod dispatch;
pub mod equation;
pub mod error;
pub mod group;
pub mod highdim;
pub mod json;
pub mod mat2;
pub mod numtheory;
pub mod perm;
pub mod semidirect;

pub use equation::{normalize, reorder_equiv, verify, Normalized, Reordered, Solution, SphericalEquation};
pub use error::{Error, Result};
pub use group::{CayleyTable, Family, GroupElement, GroupSpec};
pub use numtheory::Rng;
