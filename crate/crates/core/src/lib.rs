//! Exact finite-field machinery for checking the quadratic reciprocity law
//! through a root-of-unity determinant and Gauss's lemma.

pub mod determinant;
pub mod error;
pub mod field;
pub mod gauss;
pub mod legendre;
pub mod prime_field;
pub mod report;
pub mod sign;
pub mod verdict;
pub mod worked_example;

pub use error::{Error, Result};
pub use sign::{LegendreSign, Sign};
pub use verdict::Verdict;
