use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::exact::{rational_to_f64, ExactValue};
use crate::error::{Error, Result};

/// Coefficient field for trigonometric polynomials.
///
/// [`ExactValue`] gives provable zeros on rational geometries; `f64` covers
/// boxes with irrational proportions such as the resonant `1:1:r` cavity.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn ratio(num: i64, den: i64) -> Self;
    fn pi_power(e: i32) -> Self;
    /// Builds a length from its exact and floating representations.
    fn from_length(exact: Option<&BigRational>, approx: f64) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn sqrt(&self) -> Result<Self>;
    fn recip(&self) -> Result<Self>;
    fn to_f64(&self) -> f64;

    fn integer(n: i64) -> Self {
        Self::ratio(n, 1)
    }
}

impl Scalar for ExactValue {
    fn zero() -> Self {
        ExactValue::zero()
    }
    fn one() -> Self {
        ExactValue::one()
    }
    fn ratio(num: i64, den: i64) -> Self {
        ExactValue::ratio(num, den)
    }
    fn pi_power(e: i32) -> Self {
        ExactValue::pi_power(e)
    }
    fn from_length(exact: Option<&BigRational>, _approx: f64) -> Result<Self> {
        exact.cloned().map(ExactValue::rational).ok_or(Error::InexactGeometry)
    }
    fn is_zero(&self) -> bool {
        ExactValue::is_zero(self)
    }
    fn sqrt(&self) -> Result<Self> {
        ExactValue::sqrt(self)
    }
    fn recip(&self) -> Result<Self> {
        ExactValue::recip(self)
    }
    fn to_f64(&self) -> f64 {
        ExactValue::to_f64(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn pi_power(e: i32) -> Self {
        std::f64::consts::PI.powi(e)
    }
    fn from_length(exact: Option<&BigRational>, approx: f64) -> Result<Self> {
        Ok(exact.map(rational_to_f64).unwrap_or(approx))
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(Error::NotASurd(self.to_string()));
        }
        Ok(f64::sqrt(*self))
    }
    fn recip(&self) -> Result<Self> {
        if *self == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(1.0 / *self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}
