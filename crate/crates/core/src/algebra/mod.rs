//! Exact field arithmetic over the rationals and prime fields, and exact
//! dense linear algebra on top of it.

mod field;
mod matrix;

pub use field::{dot, Field, Scalar};
pub use matrix::Matrix;
