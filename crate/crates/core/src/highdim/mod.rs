//! Unitriangular groups of higher dimension: generalized Heisenberg groups
//! and UT(4, p).

pub mod heisenberg;
pub mod linalg;
pub mod ut4;

pub use heisenberg::{decide_heisenberg, solve_heisenberg, HeisenbergElement};
pub use linalg::{linsolve_modp, solve_bilinear};
pub use ut4::{decide_ut4, solve_ut4, Ut4Element};
