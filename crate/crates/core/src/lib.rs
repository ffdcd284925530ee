//! Minimum-weight bounded and homologous chains on simplicial complexes, by
//! dynamic programming over tree decompositions of the 1-skeleton.
//!
//! Coefficients are in Z2 throughout, so a chain is a set of simplices.

pub mod complex;
pub mod decomposition;
pub mod dp;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hasse;
pub mod io;
pub mod oracle;

pub use complex::{boundary, Chain, Simplex, SimplicialComplex, WeightFunction};
pub use error::{Error, Result};
pub use graph::UndirectedGraph;
