//! Exact classification of the translation deformations `A_g` of a
//! represented matroid's hyperplane arrangement.

pub mod algebra;
pub mod arrangement;
mod bitset;
pub mod cli;
pub mod deformation;
pub mod error;
pub mod identity;
pub mod matroid;
pub mod nbc;

pub use bitset::IndexSet;
pub use error::{Error, Result};
