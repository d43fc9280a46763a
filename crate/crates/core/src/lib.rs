//! Cobordism invariants of Hamiltonian circle and torus actions computed from
//! isolated fixed-point data: Duistermaat–Heckman measures, reduced volumes,
//! Jeffrey–Kirwan pairings, symplectic cuts and equivariant Riemann–Roch
//! characters, all in exact rational arithmetic.

pub mod algebra;
pub mod dh;
pub mod error;
pub mod format;
pub mod quantization;
pub mod reduction;
pub mod spaces;

pub use error::{Error, Result};
