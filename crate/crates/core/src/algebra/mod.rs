//! Exact coefficient fields and univariate polynomials over them.

pub mod factor;
mod field;
mod poly;
mod ratfun;
pub mod rational;
mod resultant;

pub use field::{Coeff, Field, Fp};
pub(crate) use poly::term_parts;
pub use poly::Poly;
pub use ratfun::{RatFun, TPoly};
pub use rational::{prime_support, Rational};
pub use resultant::{discriminant, resultant};
