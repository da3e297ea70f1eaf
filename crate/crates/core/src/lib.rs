//! Explicit finite permutation groups and the k-orbit calculus built on them.
//!
//! Groups are stored with their full element enumeration, so every query
//! (stabilizers, normalizers, block systems, subgroup lattices, 2-closures)
//! runs by direct filtration. This keeps the library honest at desk scale
//! (degree up to 16, order up to |S8|/2) and makes every result reproducible.
//!
//! Points are 0-based inside the library and 1-based in every serialized or
//! printed form. Composition applies the right operand first:
//! `(p * q)(x) = p(q(x))`.

pub mod catalog;
pub mod closure2;
pub mod error;
pub mod korbit;
pub mod perm;
pub mod regular;
pub mod util;

pub use error::{Error, Result};
