//! Complex pairs over a real scalar backend.
//!
//! `Complex<K>` models the quadratic extension L = k(γ) with γ² = c·1,
//! c < 0, normalized at construction so the imaginary unit is γ/√(−c).
//! Conjugation negates the imaginary part.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct Complex<K> {
    pub re: K,
    pub im: K,
}

impl<K: Scalar> Complex<K> {
    pub fn new(re: K, im: K) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: K) -> Self {
        Complex {
            re,
            im: K::zero(),
        }
    }

    pub fn i() -> Self {
        Complex {
            re: K::zero(),
            im: K::one(),
        }
    }

    /// Squared modulus, as a real scalar.
    pub fn norm_sqr(&self) -> K {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn scale(&self, s: &K) -> Self {
        Complex {
            re: self.re.clone() * s.clone(),
            im: self.im.clone() * s.clone(),
        }
    }
}

impl Complex<f64> {
    pub fn from_polar(r: f64, theta: f64) -> Self {
        Complex {
            re: r * libm::cos(theta),
            im: r * libm::sin(theta),
        }
    }

    /// Point on the unit circle at angle `theta`.
    pub fn unit(theta: f64) -> Self {
        Self::from_polar(1.0, theta)
    }

    pub fn abs(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    pub fn arg(&self) -> f64 {
        libm::atan2(self.im, self.re)
    }

    /// Principal branch square root.
    pub fn sqrt(&self) -> Self {
        Self::from_polar(libm::sqrt(self.abs()), self.arg() / 2.0)
    }

    /// Principal branch cube root.
    pub fn cbrt(&self) -> Self {
        Self::from_polar(libm::cbrt(self.abs()), self.arg() / 3.0)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl<K: Scalar> Add for Complex<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Complex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<K: Scalar> Sub for Complex<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Complex {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<K: Scalar> Mul for Complex<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Complex {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<K: Scalar> Div for Complex<K> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        let c = rhs.conjugate();
        Complex {
            re: (self.re.clone() * c.re.clone() - self.im.clone() * c.im.clone()) / n.clone(),
            im: (self.re * c.im + self.im * c.re) / n,
        }
    }
}

impl<K: Scalar> Neg for Complex<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<K: Scalar> Field for Complex<K> {
    const EXACT: bool = K::EXACT;

    fn zero() -> Self {
        Complex::from_real(K::zero())
    }
    fn one() -> Self {
        Complex::from_real(K::one())
    }
    fn from_int(n: i64) -> Self {
        Complex::from_real(K::from_int(n))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn magnitude(&self) -> f64 {
        libm::hypot(self.re.magnitude(), self.im.magnitude())
    }
    fn conjugate(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex {
            re: self.re.clone() / n.clone(),
            im: -self.im.clone() / n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ratio, Rational};

    #[test]
    fn gaussian_rational_arithmetic_is_exact() {
        let i: Complex<Rational> = Complex::i();
        let m1 = i.clone() * i.clone();
        assert_eq!(m1, Complex::from_real(ratio(-1, 1)));
        assert_eq!(i.clone() * i.recip(), Complex::one());
    }

    #[test]
    fn polar_roundtrip() {
        let z = Complex::from_polar(2.0, 0.7);
        assert!((z.abs() - 2.0).abs() < 1e-12);
        assert!((z.arg() - 0.7).abs() < 1e-12);
        let s = z.sqrt();
        let back = s.clone() * s;
        assert!((back.re - z.re).abs() < 1e-12 && (back.im - z.im).abs() < 1e-12);
    }
}
