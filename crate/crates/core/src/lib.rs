//! Equations for the fourth secant variety of three-factor Segre products and a
//! membership test for tensors of border rank at most four.

pub mod algebra;
pub mod determinantal;
pub mod error;
pub mod geometry;
pub mod membership;
pub mod random;
pub mod rep;
pub mod schur;

pub use error::{Error, Result};
