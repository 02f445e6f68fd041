//! Monotone paths on hypersimplices.
//!
//! The hypersimplex `Delta(n, k)` is the convex hull of the 0/1 vectors with
//! exactly `k` ones. This crate studies the monotone edge paths of
//! `Delta(n, k)` with respect to a generic linear direction: which paths are
//! coherent (selected by a shadow-vertex style greedy pivot for some second
//! functional), how the coherent paths are generated and counted, and how
//! they embed as the vertices of the monotone path polytope.
//!
//! All decision arithmetic is exact rational; enumeration orders and
//! serialized formats are deterministic.

pub mod coherence;
pub mod counting;
pub mod error;
pub mod generator;
pub mod geometry;
pub mod hypersimplex;
pub mod lattice;
pub mod lifting;
pub mod lp;
pub mod rational;

pub use error::{Error, Result};
