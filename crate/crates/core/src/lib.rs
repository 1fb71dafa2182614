//! Exact Laurent expansions of meromorphic germs with linear poles.
//!
//! Germs live in ℚ^k with a rational inner product. The crate decomposes
//! them into polar germs, expands them on properly positioned cone families,
//! and computes gradings, projections, residues and lattice exponential sums.

pub mod cones;
pub mod error;
pub mod exact;
pub mod exprio;
pub mod germs;
pub mod lattice;
pub mod laurent;
pub mod residues;

pub use error::{Error, Result};
