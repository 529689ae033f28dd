use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient ring of morphism spaces.
///
/// Arithmetic goes through named methods so that generic code does not have
/// to spell out operator bounds on references.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&super::rational::int(n))
    }

    /// `self` if `sign` is even, `-self` if odd.
    fn signed(&self, sign: i64) -> Self {
        if sign.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.negated()
        }
    }

    /// True when the value is an exactly known zero (no truncation error).
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Scalars over which linear algebra is offered: `Q`, and truncated Laurent
/// series treated as an approximation of the local field `Q((t))`.
pub trait FieldScalar: Scalar {
    /// Smallest valuation any nonzero value can have, when bounded.
    /// Lets pivot searches stop early.
    const VALUATION_FLOOR: Option<i64>;

    fn inverse(&self) -> Result<Self>;

    /// t-adic valuation; `i64::MAX` for zero.
    fn valuation(&self) -> i64;

    /// Number of known coefficients past the leading one; `None` if exact.
    fn relative_precision(&self) -> Option<i64>;

    /// For a zero value, the exponent up to which it is known to vanish;
    /// `None` for an exact zero.
    fn zero_precision(&self) -> Option<i64>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl FieldScalar for Rational {
    const VALUATION_FLOOR: Option<i64> = Some(0);

    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::ZeroDivision)
        } else {
            Ok(self.recip())
        }
    }
    fn valuation(&self) -> i64 {
        if Zero::is_zero(self) {
            i64::MAX
        } else {
            0
        }
    }
    fn relative_precision(&self) -> Option<i64> {
        None
    }
    fn zero_precision(&self) -> Option<i64> {
        None
    }
}
