//! Exact computations for digraph homology: path complexes, minimal paths and
//! their supporting digraphs, admissible pairs realized by singular cubes,
//! cellular homology, bounded singular cubical homology and digraph homotopy.

pub mod cellular;
pub mod chain;
pub mod corpus;
pub mod cubical;
pub mod digraph;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod minimal;
pub mod path_complex;
pub mod realization;

pub use error::{Error, Result};
