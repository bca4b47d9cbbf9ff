//! Σ-invariants of Artin groups: finite-type classification, coset
//! polynomials, χ-posets, simplicial complexes, homology and the kernel
//! complex of the cyclic cover.

pub mod catalog;
pub mod chi;
pub mod cli;
pub mod complex;
pub mod coset;
pub mod coxeter;
pub mod error;
pub mod graph;
pub mod homology;
pub mod kernel;
pub mod laurent;
pub mod report;
pub mod sigma;

pub use error::{Error, Result};
