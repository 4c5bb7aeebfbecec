//! Arbitrary-precision numeric kernel: reals, complexes, gamma-family
//! special functions, exact rationals, quadratic-field elements and
//! reconstruction of exact values from high-precision approximations.

pub mod complex;
pub mod gamma;
pub mod quad;
pub mod rational;
pub mod real;

pub use complex::Complex;
pub use gamma::{log_gamma, pochhammer, polygamma};
pub use quad::{quad_reconstruct, QuadElem};
pub use rational::{rationalize, Rational};
pub use real::Real;

use num_bigint::BigInt;

/// Working-precision context. All tolerances derive from it.
///
/// `bits` is the full working precision; results are trusted to
/// `bits - guard` bits, where the guard allowance defaults to 10% of the
/// working precision plus 64 bits.
#[derive(Clone, Debug)]
pub struct Ctx {
    bits: usize,
}

impl Ctx {
    pub fn with_bits(bits: usize) -> Self {
        Ctx { bits: bits.max(128) }
    }

    /// Context sized for `digits` trusted decimal digits: working bits are
    /// chosen so that `trusted_bits()` covers the digit target.
    pub fn with_digits(digits: usize) -> Self {
        let base = ((digits as f64) * std::f64::consts::LN_10 / std::f64::consts::LN_2).ceil()
            as usize;
        Ctx::with_bits((base + 64) * 10 / 9 + 8)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn guard(&self) -> usize {
        self.bits / 10 + 64
    }

    /// Bits we actually trust in a final result.
    pub fn trusted_bits(&self) -> usize {
        self.bits.saturating_sub(self.guard())
    }

    /// Context with doubled working precision.
    pub fn doubled(&self) -> Self {
        Ctx { bits: self.bits * 2 }
    }

    pub fn boosted(&self, extra_bits: usize) -> Self {
        Ctx { bits: self.bits + extra_bits }
    }

    /// 2^-bits: the smallest relative step at working precision.
    pub fn eps(&self) -> Real {
        Real::pow2(-(self.bits as i32), 64)
    }

    /// 2^-(bits-guard): tolerance for trusted results.
    pub fn tol(&self) -> Real {
        Real::pow2(-(self.trusted_bits() as i32), 64)
    }

    pub fn zero(&self) -> Real {
        Real::zero(self.bits)
    }

    pub fn one(&self) -> Real {
        Real::from_u64(1, self.bits)
    }

    pub fn real_u64(&self, v: u64) -> Real {
        Real::from_u64(v, self.bits)
    }

    pub fn real_i64(&self, v: i64) -> Real {
        Real::from_i64(v, self.bits)
    }

    pub fn real_f64(&self, v: f64) -> Real {
        Real::from_f64(v, self.bits)
    }

    pub fn real_bigint(&self, v: &BigInt) -> Real {
        Real::from_bigint(v, self.bits)
    }

    pub fn real_rational(&self, v: &Rational) -> Real {
        Real::from_rational(v, self.bits)
    }

    /// Rational p/q as a `Real`.
    pub fn real_ratio(&self, p: i64, q: i64) -> Real {
        &self.real_i64(p) / &self.real_i64(q)
    }

    pub fn pi(&self) -> Real {
        Real::pi(self.bits)
    }

    pub fn complex(&self, re: Real, im: Real) -> Complex {
        Complex::new(re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_to_bits() {
        let ctx = Ctx::with_digits(100);
        assert!(ctx.bits() >= 333 + 64);
        assert!(ctx.trusted_bits() >= 330);
    }
}
