//! Exact elements p + q*sqrt(D) of a real quadratic field.
//!
//! D = 1 encodes a plain rational. Mixing two genuinely different fields in
//! one arithmetic operation is a programming error and panics.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{rationalize, Rational};
use super::real::Real;
use super::Ctx;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub p: Rational,
    pub q: Rational,
    pub d: u64,
}

impl QuadElem {
    pub fn new(p: Rational, q: Rational, d: u64) -> Self {
        debug_assert!(is_square_free(d), "D must be square-free");
        if q.is_zero() {
            QuadElem { p, q, d: 1 }
        } else {
            QuadElem { p, q, d }
        }
    }

    pub fn from_rational(p: Rational) -> Self {
        QuadElem { p, q: Rational::zero(), d: 1 }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    /// The golden ratio to the fifth power, (11 + 5*sqrt(5))/2.
    pub fn phi5() -> Self {
        QuadElem::new(
            Rational::new(BigInt::from(11), BigInt::from(2)),
            Rational::new(BigInt::from(5), BigInt::from(2)),
            5,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.p)
        } else {
            None
        }
    }

    fn unified_d(&self, rhs: &Self) -> u64 {
        match (self.q.is_zero(), rhs.q.is_zero()) {
            (true, _) => rhs.d,
            (false, true) => self.d,
            (false, false) => {
                assert_eq!(self.d, rhs.d, "mixed quadratic fields");
                self.d
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let d = self.unified_d(rhs);
        QuadElem::new(&self.p + &rhs.p, &self.q + &rhs.q, d)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let d = self.unified_d(rhs);
        QuadElem::new(&self.p - &rhs.p, &self.q - &rhs.q, d)
    }

    pub fn neg(&self) -> Self {
        QuadElem::new(-&self.p, -&self.q, self.d)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let d = self.unified_d(rhs);
        let dd = Rational::from(BigInt::from(d));
        QuadElem::new(
            &(&self.p * &rhs.p) + &(&(&self.q * &rhs.q) * &dd),
            &(&self.p * &rhs.q) + &(&self.q * &rhs.p),
            d,
        )
    }

    pub fn conj(&self) -> Self {
        QuadElem::new(self.p.clone(), -&self.q, self.d)
    }

    /// Field norm p^2 - D q^2.
    pub fn norm(&self) -> Rational {
        let dd = Rational::from(BigInt::from(self.d));
        &(&self.p * &self.p) - &(&(&self.q * &self.q) * &dd)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero QuadElem");
        let n = self.norm();
        QuadElem::new(&self.p / &n, -&self.q / &n, self.d)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    pub fn mul_rat(&self, k: &Rational) -> Self {
        QuadElem::new(&self.p * k, &self.q * k, self.d)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QuadElem::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Numeric value p + q*sqrt(D) at context precision.
    pub fn eval(&self, ctx: &Ctx) -> Real {
        let p = ctx.real_rational(&self.p);
        if self.q.is_zero() {
            return p;
        }
        let q = ctx.real_rational(&self.q);
        let sq = ctx.real_u64(self.d).sqrt();
        &p + &(&q * &sq)
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        if self.q.is_zero() {
            return p;
        }
        p + self.q.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Square root inside the field (or in Q(sqrt(D')) when self is a
    /// rational with a non-square value). Returns the positive root.
    pub fn sqrt_exact(&self) -> Option<QuadElem> {
        if self.to_f64() < 0.0 {
            return None;
        }
        if self.q.is_zero() {
            // rational square?
            if let Some(s) = rational_sqrt(&self.p) {
                return Some(QuadElem::from_rational(s));
            }
            // s^2 * D' decomposition
            let (coeff, d) = sqrt_decompose(&self.p)?;
            return Some(QuadElem::new(Rational::zero(), coeff, d));
        }
        // (p + q sqrt(d))^2 = self: p^2 is a root of Y^2 - tp Y + d tq^2/4
        let disc = self.norm();
        let w = rational_sqrt(&disc)?;
        let two = Rational::from(BigInt::from(2));
        for y in [(&self.p + &w) / &two, (&self.p - &w) / &two] {
            if y.is_negative() {
                continue;
            }
            if let Some(p) = rational_sqrt(&y) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.q / &(&p * &two);
                for cand in [QuadElem::new(p.clone(), q.clone(), self.d),
                             QuadElem::new(-&p, -&q, self.d)] {
                    if cand.mul(&cand) == *self && cand.to_f64() > 0.0 {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            write!(f, "{}*sqrt({})", self.q, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.p, self.q, self.d)
        }
    }
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        while n % p == 0 {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Exact rational square root, if the value is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    if &(&sn * &sn) != r.numer() {
        return None;
    }
    let sd = r.denom().sqrt();
    if &(&sd * &sd) != r.denom() {
        return None;
    }
    Some(Rational::new(sn, sd))
}

/// Writes sqrt(r) = coeff * sqrt(D) with D square-free, by factoring out
/// squares with trial division. None when a large non-smooth cofactor
/// remains.
pub fn sqrt_decompose(r: &Rational) -> Option<(Rational, u64)> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some((Rational::zero(), 1));
    }
    // sqrt(num/den) = sqrt(num*den)/den
    let mut n = r.numer() * r.denom();
    let mut m = BigInt::one();
    let mut d = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000u64);
    while &(&p * &p) <= &n && p <= limit {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            m *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        let s = n.sqrt();
        if &s * &s == n {
            m *= s;
        } else {
            d *= &n;
        }
    }
    let d = d.to_u64()?;
    Some((Rational::new(m, r.denom().clone()), d))
}

/// Reconstruct r as p + q*sqrt(D) with numerator/denominator heights
/// bounded by `max_height`, via a three-term integer relation on
/// (r, 1, sqrt(D)).
pub fn quad_reconstruct(
    r: &Real,
    d: u64,
    max_height: u64,
    tol: &Real,
    ctx: &Ctx,
) -> Option<QuadElem> {
    assert!(is_square_free(d));
    if d == 1 {
        let rat = rationalize(r, &BigInt::from(max_height), tol)?;
        return Some(QuadElem::from_rational(rat));
    }
    let sqd = ctx.real_u64(d).sqrt();
    let rel = crate::relations::pslq::pslq(
        &[r.clone(), ctx.one(), sqd],
        &BigInt::from(max_height),
        ctx,
    )?;
    let c = rel.coefficients;
    if c[0].is_zero() {
        return None;
    }
    let p = Rational::new(-&c[1], c[0].clone());
    let q = Rational::new(-&c[2], c[0].clone());
    let height = |x: &Rational| x.numer().abs().max(x.denom().abs());
    let bound = BigInt::from(max_height);
    if height(&p) > bound || height(&q) > bound {
        return None;
    }
    let cand = QuadElem::new(p, q, d);
    if (&cand.eval(ctx) - r).abs() < *tol {
        Some(cand)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat_i64;

    #[test]
    fn phi_powers() {
        // phi = (11+5 sqrt5)/2, phi^3 = 682 + 305 sqrt5, 1/phi^3 = -682 + 305 sqrt5
        let phi = QuadElem::phi5();
        let phi3 = phi.pow(3);
        assert_eq!(phi3, QuadElem::new(rat_i64(682, 1), rat_i64(305, 1), 5));
        let inv3 = phi3.inv();
        assert_eq!(inv3, QuadElem::new(rat_i64(-682, 1), rat_i64(305, 1), 5));
        // phi * conj(phi) = norm = -1
        assert_eq!(phi.norm(), rat_i64(-1, 1));
    }

    #[test]
    fn eval_respects_field_arithmetic() {
        let ctx = Ctx::with_bits(256);
        let a = QuadElem::new(rat_i64(3, 7), rat_i64(-2, 5), 41);
        let b = QuadElem::new(rat_i64(-1, 3), rat_i64(9, 4), 41);
        let lhs = a.mul(&b).eval(&ctx);
        let rhs = &a.eval(&ctx) * &b.eval(&ctx);
        assert!((&lhs - &rhs).abs() < ctx.tol());
        let inv = a.inv();
        let one = a.mul(&inv).eval(&ctx);
        assert!((&one - &ctx.one()).abs() < ctx.tol());
    }

    #[test]
    fn sqrt_exact_cases() {
        // sqrt(1025/1024) is (5/32) sqrt(41)
        let r = QuadElem::from_rational(rat_i64(1025, 1024));
        let s = r.sqrt_exact().unwrap();
        assert_eq!(s, QuadElem::new(rat_i64(0, 1), rat_i64(5, 32), 41));
        // sqrt(9/4) = 3/2 stays rational
        let t = QuadElem::from_rational(rat_i64(9, 4)).sqrt_exact().unwrap();
        assert_eq!(t, QuadElem::from_rational(rat_i64(3, 2)));
        // in-field root: sqrt(7 + 4 sqrt3)? (2+sqrt3)^2 = 7+4sqrt3
        let u = QuadElem::new(rat_i64(7, 1), rat_i64(4, 1), 3).sqrt_exact().unwrap();
        assert_eq!(u, QuadElem::new(rat_i64(2, 1), rat_i64(1, 1), 3));
        // sqrt(phi^3) is not in Q(sqrt5)
        assert!(QuadElem::phi5().pow(3).sqrt_exact().is_none());
    }

    #[test]
    fn square_free() {
        assert!(is_square_free(1));
        assert!(is_square_free(41));
        assert!(is_square_free(10));
        assert!(!is_square_free(12));
        assert!(!is_square_free(25));
    }
}
