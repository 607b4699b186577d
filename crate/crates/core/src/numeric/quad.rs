//! Exact arithmetic in the real quadratic field `Q(sqrt(d))`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{self, Rational, Sign};
use crate::error::{Error, Result};

/// Radicand used when a value carries no irrational part.
pub const DEFAULT_DISCRIMINANT: u32 = 2;

/// The number `a + b*sqrt(d)` with rational `a`, `b` and squarefree `d >= 2`.
///
/// When `b == 0` the radicand is irrelevant and the value combines with
/// scalars of any field. Operators panic on a genuine field mismatch; use the
/// `checked_*` methods where that can happen.
#[derive(Clone, Debug)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: u32,
}

pub fn is_squarefree(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::InvalidInput(format!(
                "discriminant {d} is not a squarefree integer >= 2"
            )));
        }
        Ok(QuadScalar { a, b, d })
    }

    pub fn rational(a: Rational) -> Self {
        QuadScalar {
            a,
            b: Rational::zero(),
            d: DEFAULT_DISCRIMINANT,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rational::int(n))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u32) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn joint_d(&self, other: &Self) -> Result<u32> {
        if self.b.is_zero() {
            Ok(other.d)
        } else if other.b.is_zero() || self.d == other.d {
            Ok(self.d)
        } else {
            Err(Error::FieldMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.joint_d(other)?;
        Ok(QuadScalar {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let d = self.joint_d(other)?;
        Ok(QuadScalar {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.joint_d(other)?;
        if self.b.is_zero() && other.b.is_zero() {
            return Ok(QuadScalar {
                a: &self.a * &other.a,
                b: Rational::zero(),
                d,
            });
        }
        let rd = rational::int(d as i64);
        Ok(QuadScalar {
            a: &self.a * &other.a + &self.b * &other.b * rd,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        })
    }

    /// Division via the conjugate; `None` for a zero divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Option<Self>> {
        let d = self.joint_d(other)?;
        let Some(inv) = other.inverse() else {
            return Ok(None);
        };
        let mut q = self.checked_mul(&inv)?;
        q.d = d;
        Ok(Some(q))
    }

    /// `a^2 - d b^2`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rational::int(self.d as i64)
    }

    pub fn conjugate(&self) -> Self {
        QuadScalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadScalar {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadScalar {
            a: &self.a * r,
            b: &self.b * r,
            d: self.d,
        }
    }

    /// Exact sign of `a + b sqrt(d)`, decided from the signs of `a`, `b` and the norm.
    pub fn sign(&self) -> Sign {
        let sa = Sign::of_rational(&self.a);
        let sb = Sign::of_rational(&self.b);
        match (sa, sb) {
            (s, Sign::Zero) => s,
            (Sign::Zero, s) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: the larger magnitude wins; a^2 == d b^2 is
                // impossible for squarefree d unless both vanish
                if Sign::of_rational(&self.norm()) == Sign::Positive {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    /// Exact sign of `self - other`.
    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.checked_sub(other)?.sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let a = rational::to_f64(&self.a);
        if self.b.is_zero() {
            return a;
        }
        a + rational::to_f64(&self.b) * (self.d as f64).sqrt()
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Sign::Negative {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        QuadScalar::rational(r)
    }
}

impl PartialEq for QuadScalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadScalar {}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.checked_cmp(other).expect("comparison across quadratic fields")
    }
}

impl std::hash::Hash for QuadScalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
        if !self.b.is_zero() {
            self.d.hash(state);
        }
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = rational::format_rational(&self.a);
        if self.b.is_zero() {
            return f.write_str(&a);
        }
        let b = rational::format_rational(&self.b);
        if self.a.is_zero() {
            write!(f, "{b}*sqrt({})", self.d)
        } else if let Some(mag) = b.strip_prefix('-') {
            write!(f, "{a}-{mag}*sqrt({})", self.d)
        } else {
            write!(f, "{a}+{b}*sqrt({})", self.d)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &'a QuadScalar) -> QuadScalar {
                self.$checked(rhs).expect("quadratic field mismatch")
            }
        }
        impl $tr for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$checked(&rhs).expect("quadratic field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Div for QuadScalar {
    type Output = QuadScalar;
    fn div(self, rhs: QuadScalar) -> QuadScalar {
        self.checked_div(&rhs)
            .expect("quadratic field mismatch")
            .expect("division by zero")
    }
}

impl<'a> Div<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn div(self, rhs: &'a QuadScalar) -> QuadScalar {
        self.checked_div(rhs)
            .expect("quadratic field mismatch")
            .expect("division by zero")
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Zero for QuadScalar {
    fn zero() -> Self {
        QuadScalar::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadScalar {
    fn one() -> Self {
        QuadScalar::rational(Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::{int, ratio};

    fn sqrt2() -> QuadScalar {
        QuadScalar::sqrt(2).unwrap()
    }

    #[test]
    fn rationalized_quotient_matches() {
        // sqrt2 / (1 + sqrt2) = 2 - sqrt2
        let lhs = QuadScalar::int(2) - sqrt2();
        let rhs = sqrt2() / (QuadScalar::int(1) + sqrt2());
        assert_eq!(lhs.checked_cmp(&rhs).unwrap(), Ordering::Equal);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn signs_without_floats() {
        assert_eq!((sqrt2() - QuadScalar::int(2)).sign(), Sign::Negative);
        assert_eq!((sqrt2() - QuadScalar::int(1)).sign(), Sign::Positive);
        let tight = QuadScalar::new(ratio(-141421, 100000), int(1), 2).unwrap();
        assert_eq!(tight.sign(), Sign::Positive);
        let tight = QuadScalar::new(ratio(-141422, 100000), int(1), 2).unwrap();
        assert_eq!(tight.sign(), Sign::Negative);
        assert_eq!(QuadScalar::zero().sign(), Sign::Zero);
    }

    #[test]
    fn additive_identity_and_mismatch() {
        let x = QuadScalar::new(ratio(1, 3), ratio(-2, 5), 2).unwrap();
        assert_eq!(&x + &QuadScalar::zero(), x);
        let y = QuadScalar::sqrt(3).unwrap();
        assert_eq!(x.checked_add(&y), Err(Error::FieldMismatch(2, 3)));
        // rational values combine with any field
        assert!(QuadScalar::int(4).checked_add(&y).is_ok());
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(QuadScalar::new(int(0), int(1), 4).is_err());
        assert!(QuadScalar::new(int(0), int(1), 1).is_err());
        assert!(is_squarefree(6) && !is_squarefree(12));
    }

    #[test]
    fn display_forms() {
        assert_eq!(sqrt2().to_string(), "1*sqrt(2)");
        let x = QuadScalar::new(ratio(-1, 2), ratio(-3, 4), 2).unwrap();
        assert_eq!(x.to_string(), "-1/2-3/4*sqrt(2)");
    }
}
