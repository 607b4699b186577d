use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::quad::QuadScalar;
use super::rational::{self, Rational, Sign};

/// An ordered field with exact arithmetic and decidable sign.
pub trait ExactField:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn sign(&self) -> Sign;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;

    fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }
}

impl ExactField for Rational {
    fn sign(&self) -> Sign {
        Sign::of_rational(self)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }
}

impl ExactField for QuadScalar {
    fn sign(&self) -> Sign {
        QuadScalar::sign(self)
    }

    fn from_rational(r: &Rational) -> Self {
        QuadScalar::rational(r.clone())
    }

    fn to_f64(&self) -> f64 {
        QuadScalar::to_f64(self)
    }
}
