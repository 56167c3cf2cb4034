//! Exact computations for Mordell-Weil lattices of rational elliptic surfaces
//! attached to plane quartics, and the quadratic-residue symbol of even
//! tangential conics.

pub mod arith;
pub mod error;
pub mod lattice;
pub mod quartic;
pub mod report;
pub mod surface;

pub use error::{Error, Result};
