//! Exact computations on unitary Cayley graphs `X_n = Cay(Z_n, U_n)`.
//!
//! Every closed form (spectrum, characteristic and minimal polynomials,
//! determinant, the disjoint 0/1 basis of the adjacency algebra) comes with
//! an independent brute-force check on the explicit graph.

pub mod arith;
pub mod coherent;
pub mod error;
pub mod graphs;
pub mod polynomials;
pub mod spectra;
pub mod sweep;

pub use error::{Error, Result};
