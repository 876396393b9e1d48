//! The coefficient interface shared by every polynomial routine.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A field of coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_rational(q: BigRational) -> Self;

    /// The weight indeterminate, if this field has one.
    fn lambda() -> Option<Self>;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Whether the printed form should carry a leading minus sign.
    fn is_negative(&self) -> bool;

    /// Coefficient text for a term, without sign: plain for rationals and the
    /// bare indeterminate, parenthesized otherwise.
    fn coeff_text(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }
}

pub(crate) fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Scalar for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn lambda() -> Option<Self> {
        None
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn coeff_text(&self) -> String {
        rational_text(&self.abs())
    }
}
