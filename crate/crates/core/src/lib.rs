//! Counting conjugacy classes of cyclic subgroups of prime order `p` in
//! `PGL(k+1, C)` that can act on point sets in general position, together
//! with exact checks of the association (Gale duality) between their orbits.
//!
//! A diagonal subgroup of order `p` is an exponent vector in `Z_p^(k+1)`
//! taken modulo scalars and shifts; the symmetric group permutes
//! coordinates, and conjugacy classes are orbits of that action.

pub mod error;
pub mod gale;
pub mod action;
pub mod census;
pub mod congruence;
pub mod residue;
pub mod semidirect;
pub mod subgroup;

pub use error::{Error, Result};
