use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::{Rational, ScalarError, Surd};

/// `re + i·im` with exact surd parts.
///
/// This is how the bracket layer carries the imaginary unit of `i f^{ab}_c`:
/// the `im` part is the coefficient with i-power one.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ComplexSurd {
    pub re: Surd,
    pub im: Surd,
}

impl ComplexSurd {
    pub fn new(re: Surd, im: Surd) -> Self {
        ComplexSurd { re, im }
    }

    pub fn zero() -> Self {
        ComplexSurd::default()
    }

    pub fn one() -> Self {
        Self::real(Surd::one())
    }

    pub fn i() -> Self {
        Self::imag(Surd::one())
    }

    pub fn real(re: Surd) -> Self {
        ComplexSurd { re, im: Surd::zero() }
    }

    pub fn imag(im: Surd) -> Self {
        ComplexSurd { re: Surd::zero(), im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(Surd::from_integer(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::real(Surd::from_rational(q))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.im.is_zero() {
            self.re.as_rational()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        ComplexSurd { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ComplexSurd { re: self.re.scale(q), im: self.im.scale(q) }
    }

    pub fn scale_surd(&self, s: &Surd) -> Self {
        ComplexSurd { re: &self.re * s, im: &self.im * s }
    }

    /// Multiplies by `i`.
    pub fn times_i(&self) -> Self {
        ComplexSurd { re: -&self.im, im: self.re.clone() }
    }

    /// Inverse of a purely real or purely imaginary single-term value.
    pub fn recip(&self) -> Result<Self, ScalarError> {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => Err(ScalarError::DivisionByZero),
            (false, true) => Ok(Self::real(self.re.recip()?)),
            // 1/(i·b) = −i/b
            (true, false) => Ok(Self::imag(-self.im.recip()?)),
            (false, false) => Err(ScalarError::NotInvertible(self.to_string())),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        match (self.re.is_zero(), self.im.is_zero(), rhs.re.is_zero(), rhs.im.is_zero()) {
            (_, _, true, true) | (true, true, _, _) => Self::zero(),
            (false, true, false, true) => Self::real(&self.re * &rhs.re),
            (true, false, true, false) => Self::real(-(&self.im * &rhs.im)),
            (false, true, true, false) => Self::imag(&self.re * &rhs.im),
            (true, false, false, true) => Self::imag(&self.im * &rhs.re),
            _ => ComplexSurd {
                re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
                im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
            },
        }
    }
}

impl From<Surd> for ComplexSurd {
    fn from(s: Surd) -> Self {
        ComplexSurd::real(s)
    }
}

impl From<i64> for ComplexSurd {
    fn from(n: i64) -> Self {
        ComplexSurd::from_integer(n)
    }
}

impl<'a> Add<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn add(self, rhs: &'a ComplexSurd) -> ComplexSurd {
        ComplexSurd { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for ComplexSurd {
    type Output = ComplexSurd;
    fn add(self, rhs: ComplexSurd) -> ComplexSurd {
        &self + &rhs
    }
}

impl AddAssign<&ComplexSurd> for ComplexSurd {
    fn add_assign(&mut self, rhs: &ComplexSurd) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn sub(self, rhs: &'a ComplexSurd) -> ComplexSurd {
        ComplexSurd { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for ComplexSurd {
    type Output = ComplexSurd;
    fn sub(self, rhs: ComplexSurd) -> ComplexSurd {
        &self - &rhs
    }
}

impl<'a> Mul<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn mul(self, rhs: &'a ComplexSurd) -> ComplexSurd {
        self.mul_ref(rhs)
    }
}

impl Mul for ComplexSurd {
    type Output = ComplexSurd;
    fn mul(self, rhs: ComplexSurd) -> ComplexSurd {
        self.mul_ref(&rhs)
    }
}

impl Neg for &ComplexSurd {
    type Output = ComplexSurd;
    fn neg(self) -> ComplexSurd {
        ComplexSurd { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexSurd {
    type Output = ComplexSurd;
    fn neg(self) -> ComplexSurd {
        -&self
    }
}

impl fmt::Display for ComplexSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            (false, false) => write!(f, "{}+i*({})", self.re, self.im),
        }
    }
}

impl fmt::Debug for ComplexSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&ComplexSurd::i() * &ComplexSurd::i(), ComplexSurd::from_integer(-1));
        assert_eq!(ComplexSurd::one().times_i(), ComplexSurd::i());
    }

    #[test]
    fn recip_of_imaginary_monomial() {
        let x = ComplexSurd::imag(Surd::sqrt_u64(2));
        assert!((&x * &x.recip().unwrap()).is_one());
        let mixed = ComplexSurd::new(Surd::one(), Surd::one());
        assert!(mixed.recip().is_err());
    }
}
