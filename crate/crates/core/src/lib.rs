//! Exact containment tests for polytopes and their projections.

pub mod containment;
pub mod corpus;
pub mod counterexample;
pub mod decomposability;
pub mod error;
pub mod hull;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod reliability;
pub mod selftest;
pub mod subspace;

pub use error::{Error, Result};
pub use linalg::{RatMatrix, RatVector, Rational};
pub use polytope::{Facet, Polytope};
pub use subspace::Subspace;
