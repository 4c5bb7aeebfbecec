//! Arbitrary-precision real numbers.
//!
//! `Real` wraps an [`astro_float::BigFloat`]. Every value carries its own
//! bit precision; binary operations work at the larger precision of the two
//! operands, so precision is inherited from the values a context creates.
//! Transcendental functions use a thread-local constants cache.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, Sign as IntSign};
use num_rational::BigRational;
use num_traits::Zero;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("constants cache allocation"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct Real(pub(crate) BigFloat);

impl Real {
    pub fn from_bigfloat(f: BigFloat) -> Self {
        Real(f)
    }

    pub fn zero(bits: usize) -> Self {
        Real(BigFloat::from_u32(0, bits))
    }

    pub fn from_u64(v: u64, bits: usize) -> Self {
        Real(BigFloat::from_u64(v, bits))
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Real(BigFloat::from_i64(v, bits))
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        Real(BigFloat::from_f64(v, bits))
    }

    /// Exact conversion of a big integer, then rounding to `bits`.
    pub fn from_bigint(v: &BigInt, bits: usize) -> Self {
        if v.is_zero() {
            return Real::zero(bits);
        }
        let (sign, mag) = (v.sign(), v.magnitude());
        let bitlen = mag.bits() as usize;
        // Left-align the magnitude so the top mantissa bit is set, then the
        // astro-float exponent is exactly the bit length.
        let words_needed = bitlen.div_ceil(64);
        let shift = words_needed * 64 - bitlen;
        let shifted = mag << shift;
        let mut digits = shifted.to_u64_digits();
        while digits.len() < words_needed {
            digits.push(0);
        }
        let s = if sign == IntSign::Minus { Sign::Neg } else { Sign::Pos };
        let mut f = BigFloat::from_words(&digits, s, bitlen as astro_float::Exponent);
        if f.mantissa_max_bit_len().unwrap_or(0) < bits {
            f.set_precision(bits, RM).expect("set precision");
        } else {
            f.set_precision(bits.max(64), RM).expect("set precision");
        }
        Real(f)
    }

    pub fn from_rational(r: &BigRational, bits: usize) -> Self {
        let n = Real::from_bigint(r.numer(), bits + 64);
        let d = Real::from_bigint(r.denom(), bits + 64);
        Real(n.0.div(&d.0, bits, RM))
    }

    pub fn parse_decimal(s: &str, bits: usize) -> Option<Self> {
        let f = with_cc(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, cc));
        if f.is_nan() {
            None
        } else {
            Some(Real(f))
        }
    }

    pub fn bits(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(64)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive() && !self.0.is_zero()
    }

    /// Binary exponent: value lies in [2^(e-1), 2^e). None for zero/NaN.
    pub fn exponent(&self) -> Option<i32> {
        if self.is_zero() || self.0.is_nan() {
            None
        } else {
            self.0.exponent()
        }
    }

    pub fn abs(&self) -> Self {
        let mut f = self.0.clone();
        f.set_sign(Sign::Pos);
        Real(f)
    }

    /// Multiply by 2^k exactly.
    pub fn ldexp(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut f = self.0.clone();
        let e = f.exponent().expect("finite");
        f.set_exponent(e + k);
        Real(f)
    }

    /// 2^k at the given precision.
    pub fn pow2(k: i32, bits: usize) -> Self {
        Real::from_u64(1, bits).ldexp(k)
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        let b = self.bits();
        Real(self.0.mul(&BigFloat::from_u64(k, 64), b, RM))
    }

    pub fn div_u64(&self, k: u64) -> Self {
        let b = self.bits();
        Real(self.0.div(&BigFloat::from_u64(k, 64), b, RM))
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let b = self.bits();
        Real(self.0.mul(&BigFloat::from_i64(k, 64), b, RM))
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(self.bits(), RM))
    }

    pub fn sqrt(&self) -> Self {
        Real(self.0.sqrt(self.bits(), RM))
    }

    pub fn exp(&self) -> Self {
        Real(with_cc(|cc| self.0.exp(self.bits(), RM, cc)))
    }

    pub fn ln(&self) -> Self {
        Real(with_cc(|cc| self.0.ln(self.bits(), RM, cc)))
    }

    pub fn sin(&self) -> Self {
        Real(with_cc(|cc| self.0.sin(self.bits(), RM, cc)))
    }

    pub fn cos(&self) -> Self {
        Real(with_cc(|cc| self.0.cos(self.bits(), RM, cc)))
    }

    pub fn atan(&self) -> Self {
        Real(with_cc(|cc| self.0.atan(self.bits(), RM, cc)))
    }

    pub fn powi(&self, n: usize) -> Self {
        if n == 0 {
            return Real::from_u64(1, self.bits());
        }
        Real(self.0.powi(n, self.bits(), RM))
    }

    pub fn pi(bits: usize) -> Self {
        Real(with_cc(|cc| cc.pi(bits, RM)))
    }

    pub fn ln2(bits: usize) -> Self {
        Real(with_cc(|cc| cc.ln_2(bits, RM)))
    }

    /// Round to the nearest integer (ties away from zero).
    pub fn round_to_bigint(&self) -> BigInt {
        if self.is_zero() || self.0.is_nan() {
            return BigInt::zero();
        }
        let (words, _n, sign, e, _inexact) = self.0.as_raw_parts().expect("finite");
        let mag = num_bigint::BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let nbits = (words.len() * 64) as i64;
        let shift = e as i64 - nbits;
        let mag = if shift >= 0 {
            mag << shift
        } else {
            let sh = (-shift) as u64;
            if sh == 0 {
                mag
            } else {
                let floor = &mag >> sh;
                let frac_top = (&mag >> (sh - 1)) & num_bigint::BigUint::from(1u32);
                floor + frac_top
            }
        };
        let v = BigInt::from(mag);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    pub fn floor_to_bigint(&self) -> BigInt {
        let r = self.round_to_bigint();
        let back = Real::from_bigint(&r, self.bits() + 64);
        if &back > self {
            r - 1
        } else {
            r
        }
    }

    /// Exact dyadic decomposition: self = mantissa * 2^exp.
    pub fn to_dyadic(&self) -> (BigInt, i64) {
        if self.is_zero() {
            return (BigInt::zero(), 0);
        }
        let (words, _n, sign, e, _inexact) = self.0.as_raw_parts().expect("finite");
        let mag = num_bigint::BigUint::from_slice(
            &words
                .iter()
                .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                .collect::<Vec<_>>(),
        );
        let mut v = BigInt::from(mag);
        if sign == Sign::Neg {
            v = -v;
        }
        (v, e as i64 - (words.len() * 64) as i64)
    }

    /// Decimal string with the given number of significant digits,
    /// formatted as `-d.ddd...e±k`. Deterministic for a fixed input.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        if self.0.is_nan() {
            return "nan".to_string();
        }
        let neg = self.is_negative();
        let a = self.abs();
        // estimate the decimal exponent from the binary one
        let e2 = a.exponent().unwrap() as f64;
        let mut e10 = (e2 * std::f64::consts::LOG10_2).floor() as i64 - 1;
        let bits = (self.bits() + 64).max(((digits + 4) as f64 * 3.33).ceil() as usize);
        // scale so that round(a * 10^(digits-1-e10)) has `digits` or `digits`+1 digits
        loop {
            let k = digits as i64 - 1 - e10;
            let scaled = if k >= 0 {
                let tens = Real::from_bigint(&BigInt::from(10u32).pow(k as u32), bits);
                Real((&a.0).mul(&tens.0, bits, RM))
            } else {
                let tens = Real::from_bigint(&BigInt::from(10u32).pow((-k) as u32), bits);
                Real(a.0.div(&tens.0, bits, RM))
            };
            let n = scaled.round_to_bigint();
            let s = n.magnitude().to_string();
            if s.len() == digits {
                let mantissa = if digits == 1 {
                    s
                } else {
                    format!("{}.{}", &s[..1], &s[1..])
                };
                let sign = if neg { "-" } else { "" };
                return format!("{}{}e{}{}", sign, mantissa, if e10 >= 0 { "+" } else { "-" }, e10.abs());
            }
            // adjust the exponent estimate and retry
            e10 += s.len() as i64 - digits as i64;
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = match self.exponent() {
            Some(e) => e,
            None => return f64::NAN,
        };
        if e > 1020 {
            return if self.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if e < -1020 {
            return 0.0;
        }
        let s = self.to_decimal_string(17);
        s.parse().unwrap_or(f64::NAN)
    }
}

fn prec2(a: &Real, b: &Real) -> usize {
    a.bits().max(b.bits())
}

macro_rules! binop {
    ($trait:ident, $meth:ident, $raw:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $meth(self, rhs: &Real) -> Real {
                Real(self.0.$raw(&rhs.0, prec2(self, rhs), RM))
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $meth(self, rhs: Real) -> Real {
                (&self).$meth(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $meth(self, rhs: &Real) -> Real {
                (&self).$meth(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $meth(self, rhs: Real) -> Real {
                self.$meth(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(32))
    }
}
