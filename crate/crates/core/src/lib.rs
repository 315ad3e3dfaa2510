//! Zeta functions of varieties over small finite fields, and exact checks of
//! q-divisibility bounds for their reciprocal zeros and poles.

pub mod algebra;
pub mod counting;
pub mod error;
mod json;
pub mod mu;
pub mod padic;
pub mod poly;
pub mod scalar;
pub mod verify;
pub mod zeta;

pub use error::{Error, ErrorKind, Result};
pub use poly::Poly;

/// Integer polynomials (zeta numerators, denominators and their factors).
pub type IntPoly = Poly<num_bigint::BigInt>;
/// Exact rational polynomials used during reconstruction.
pub type RatPoly = Poly<num_rational::BigRational>;
