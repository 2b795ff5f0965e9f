//! Exact combinatorics of moment-angle complexes.
//!
//! The crate computes with finite simplicial complexes and the invariants of the
//! associated moment-angle complex Z_K: multigraded Koszul cohomology of the
//! Stanley-Reisner ring, bigraded Betti numbers via Hochster's formula, Massey
//! products through explicit defining systems, nestohedra and their nested-set
//! complexes, and small isomorph-free censuses of spheres and graphs.
//!
//! All arithmetic is exact: rationals, prime fields, or integer Smith normal
//! form. Every public computation is deterministic.

pub mod betti;
pub mod building;
pub mod canon;
pub mod census;
pub mod cli;
pub mod complex;
pub mod error;
pub mod fvector;
pub mod graph;
pub mod homology;
pub mod io;
pub mod koszul;
pub mod linalg;
pub mod massey;
pub mod nerve;
pub mod obstruction;
pub mod subset;

/// Tool version embedded in every output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
