//! Exact computation of the topological recursion invariants of the curve
//! `x = z + 1/z`, `y = ln z`, their expansion coefficients, and the
//! stationary Gromov-Witten invariants of the projective line they encode.

pub mod curve;
pub mod eo;
pub mod error;
pub mod exact;
pub mod expand;
pub mod golden;
pub mod gw;
pub mod psi;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rat;
