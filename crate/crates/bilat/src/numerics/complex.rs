//! Complex arithmetic on top of [`Real`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::real::Real;

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.bits();
        Complex { re, im: Real::zero(bits) }
    }

    pub fn zero(bits: usize) -> Self {
        Complex { re: Real::zero(bits), im: Real::zero(bits) }
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    /// Cheap magnitude bound |re| + |im|, enough for tolerance tests.
    pub fn mag1(&self) -> Real {
        &self.re.abs() + &self.im.abs()
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex { re: &self.re * k, im: &self.im * k }
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        Complex { re: self.re.mul_u64(k), im: self.im.mul_u64(k) }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Complex { re: &self.re / &n, im: -&(&self.im / &n) }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        Complex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, rhs: &Complex) -> Complex {
        let n = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        Complex { re: &re / &n, im: &im / &n }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -&self.re, im: -&self.im }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let bits = 192;
        let a = Complex::new(Real::from_u64(3, bits), Real::from_u64(4, bits));
        let b = Complex::new(Real::from_u64(1, bits), -Real::from_u64(2, bits));
        let p = &a * &b;
        assert_eq!(p.re.to_f64(), 11.0);
        assert_eq!(p.im.to_f64(), -2.0);
        let q = &p / &b;
        assert!((&q.re - &a.re).abs() < Real::pow2(-180, 64));
        assert!((&q.im - &a.im).abs() < Real::pow2(-180, 64));
        assert_eq!(a.abs().to_f64(), 5.0);
    }
}
