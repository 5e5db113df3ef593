//! Exact computation of relation spaces for pairs of period polynomials under
//! `PSL2(Z) x PSL2(Z)`, together with the cusp-graph homology that certifies
//! the defining ideals.

pub mod linalg;
pub mod error;
pub mod modular;
pub mod action;
pub mod algebra;
pub mod spaces;
pub mod homology;
pub mod checks;

pub use error::{Error, Result};
