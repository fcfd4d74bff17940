//! Evaluation and numerical verification of elliptic-genus identities built
//! from the odd Jacobi theta function.

pub mod error;
pub mod evaluator;
pub mod harness;
pub mod models;
pub mod numeric;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
