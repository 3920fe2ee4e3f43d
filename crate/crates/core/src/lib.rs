//! Exact computations with graded real semisimple Lie algebras.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod involutions;
pub mod jordan_sl2;
pub mod nilclass;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod z2_orbits;

pub use error::{Error, Result};
