//! Scalar backends: exact arbitrary-precision rationals and `f64`.
//!
//! A computation runs over exactly one backend; the type parameter carries
//! the choice, so exact and float values can never mix. Tolerances form a
//! fixed hierarchy: `TOL_EQ` for equality, `TOL_RESIDUAL` for linear-system
//! residuals and certification, `TOL_SPECTRUM` (the loosest) for the
//! discrete spectrum decisions downstream.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact backend scalar: arbitrary-precision integer fractions.
pub type Rational = BigRational;

/// Relative equality tolerance on the float backend.
pub const TOL_EQ: f64 = 1e-9;
/// Linear-system residual and certification tolerance.
pub const TOL_RESIDUAL: f64 = 1e-8;
/// Spectrum-equality tolerance feeding discrete classification decisions.
pub const TOL_SPECTRUM: f64 = 1e-7;

/// Commutative ring-with-division entries for matrices: real scalars or
/// complex pairs over them.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and equality decidable.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// Exact zero test (on floats: bit-level zero, not a tolerance check).
    fn is_zero(&self) -> bool;
    /// Approximate absolute value, used for pivot selection and tolerance
    /// scaling. Exact values only need a rough magnitude here.
    fn magnitude(&self) -> f64;
    /// Complex conjugation; identity on real scalars.
    fn conjugate(&self) -> Self;
    /// Multiplicative inverse. Callers must exclude zero first.
    fn recip(&self) -> Self;
}

/// Real scalars: the coordinates of octonions.
pub trait Scalar: Field + PartialOrd {
    /// Exact square root when one exists in the backend; on floats, `None`
    /// for negative inputs.
    fn sqrt(&self) -> Option<Self>;
    fn abs(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_negative(&self) -> bool;
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        libm::fabs(*self)
    }
    fn conjugate(&self) -> Self {
        *self
    }
    fn recip(&self) -> Self {
        1.0 / self
    }
}

impl Scalar for f64 {
    fn sqrt(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(libm::sqrt(*self))
        } else {
            None
        }
    }
    fn abs(&self) -> Self {
        libm::fabs(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as num_traits::One>::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn is_zero(&self) -> bool {
        <Rational as Zero>::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(self).map(f64::abs).unwrap_or(f64::INFINITY)
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
    fn recip(&self) -> Self {
        BigRational::recip(self)
    }
}

impl Scalar for Rational {
    fn sqrt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let num = self.numer();
        let den = self.denom();
        let sn = num.sqrt();
        let sd = den.sqrt();
        if &(&sn * &sn) == num && &(&sd * &sd) == den {
            Some(Rational::new(sn, sd))
        } else {
            None
        }
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Backend-aware closeness: exact equality on the exact backend, relative
/// tolerance on floats.
pub fn scalars_close<K: Field>(a: &K, b: &K, tol: f64) -> bool {
    if K::EXACT {
        a == b
    } else {
        let diff = (a.clone() - b.clone()).magnitude();
        diff <= tol * 1.0f64.max(a.magnitude()).max(b.magnitude())
    }
}

/// Backend-aware "is effectively zero at this scale".
pub fn negligible<K: Field>(x: &K, tol: f64, scale: f64) -> bool {
    if K::EXACT {
        x.is_zero()
    } else {
        x.magnitude() <= tol * scale.max(1.0)
    }
}

/// Shorthand for building a rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt_of_perfect_square() {
        assert_eq!(ratio(9, 16).sqrt(), Some(ratio(3, 4)));
        assert_eq!(ratio(2, 1).sqrt(), None);
        assert_eq!(ratio(-4, 1).sqrt(), None);
    }

    #[test]
    fn float_close_is_relative() {
        assert!(scalars_close(&1.0e6, &(1.0e6 + 1e-4), TOL_EQ));
        assert!(!scalars_close(&1.0, &(1.0 + 1e-6), TOL_EQ));
    }

    #[test]
    fn exact_close_is_equality() {
        assert!(scalars_close(&ratio(1, 3), &ratio(2, 6), TOL_EQ));
        assert!(!scalars_close(&ratio(1, 3), &ratio(1, 4), TOL_EQ));
    }
}
