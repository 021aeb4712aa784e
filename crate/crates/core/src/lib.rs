//! Exact Wick-pairing evaluation of Gaussian Hermitian matrix integrals,
//! together with the graph, fat-graph and cycle-cover censuses that compute
//! the same numbers combinatorially.

pub mod algebra;
pub mod census;
pub mod digraph;
pub mod error;
pub mod fatgraph;
pub mod iharaselberg;
pub mod integrands;
pub mod verify;
pub mod wick;

pub use algebra::{ExactPoly, Monomial, Rational, TruncatedSeries, Truncation, Var, VarGroup};
pub use error::{Error, Result};
