//! Continued fraction expansions of formal Laurent series in `X^-1` over
//! Q, F_p and Q(t), with exact reduction modulo primes and specialisation
//! of the parameter `t`.
//!
//! Everything is exact. Truncated series carry a count of guaranteed
//! coefficients, and every partial quotient emitted from a truncated
//! series is provably correct.

pub mod algebra;
pub mod cf;
mod error;
pub mod families;
pub mod reduction;
pub mod series;
pub mod transform;

pub use algebra::{Coeff, Field, Poly};
pub use error::{Error, Result};
