//! Scalar abstractions shared by the dense polynomial code.
//!
//! The same polynomial routines run over exact integers, exact rationals and
//! machine floats; the bounds below are the minimum each routine needs.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{NumOps, One, Zero};

/// A commutative ring element usable as a polynomial coefficient.
pub trait Scalar: Clone + Debug + PartialEq + Zero + One + NumOps + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Zero + One + NumOps + Neg<Output = T> {}

/// Scalars whose `/` is exact field division.
pub trait FieldScalar: Scalar {}

impl FieldScalar for BigRational {}
impl FieldScalar for Ratio<i64> {}
impl FieldScalar for f32 {}
impl FieldScalar for f64 {}

/// Integer-like scalars with exact division by divisors.
pub trait IntegerScalar: Scalar + num_integer::Integer {}

impl IntegerScalar for BigInt {}
impl IntegerScalar for i64 {}
