//! Exact-arithmetic computations with finite-dimensional mixed Hodge
//! structures: filtration validation, Hodge 1-motives via extension class
//! maps, weight-graded pieces of singular-variety cohomology from
//! simplicial descent data, and the Mayer-Vietoris gluings that realize
//! the two desk-scale worked examples.

pub mod error;
pub mod scalar;
pub mod matrix;
pub mod lattice;
pub mod spaces;
pub mod mhs;
pub mod motive;
pub mod complexes;
pub mod descent;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Rat, Scalar};
