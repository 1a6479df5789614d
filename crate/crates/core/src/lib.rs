//! Hochschild, cyclic and negative cyclic homology of small DG categories.
//!
//! Categories have finitely many objects and finite-dimensional hom
//! complexes given on explicit bases. All homology is computed by exact
//! sparse linear algebra over the rationals on bar-length truncated
//! chain models, and every dimension is reported with a stability flag.

pub mod catalog;
pub mod chern;
pub mod constructions;
pub mod cyclic;
pub mod dgcore;
pub mod error;
pub mod exactla;
pub mod hochschild;
pub mod io;
pub mod params;
pub mod suite;

pub use dgcore::{DGCategory, GradedBasis};
pub use error::{Error, Result};
pub use exactla::{SparseMatrix, SparseVec, Q};
pub use params::{ComputationParams, Field};
