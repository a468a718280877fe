//! Exact characteristic-class operators on correspondences, bicycles and
//! zigzags between products of projective spaces.

pub mod bicycle;
pub mod check;
pub mod classes;
pub mod corr;
pub mod error;
pub mod functor;
pub mod ktheory;
pub mod laws;
pub mod motivic;
pub mod operator;
pub mod random;
pub mod series;
pub mod spaces;
pub mod suites;
pub mod zigzag;

pub use error::{Error, Result};
