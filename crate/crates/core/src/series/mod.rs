//! Exact scalar and ring arithmetic shared by the Chow and K-theory models.

pub mod rational;
mod ring;
mod univariate;
mod ypoly;

pub use rational::Rational;
pub use ring::{Exponents, NilpotentRing, RingElement, RingOp};
pub use univariate::{bernoulli, invert_unit, UnivariateSeries};
pub use ypoly::YPoly;
