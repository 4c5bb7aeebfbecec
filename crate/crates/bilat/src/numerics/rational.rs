//! Exact rationals and continued-fraction identification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::real::Real;

/// Exact rational; always stored in lowest terms with positive denominator
/// (guaranteed by `num_rational`).
pub type Rational = num_rational::BigRational;

pub fn rat_i64(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Best continued-fraction convergent p/q of `r` with q <= max_den and
/// |r - p/q| < tol, if one exists.
pub fn rationalize(r: &Real, max_den: &BigInt, tol: &Real) -> Option<Rational> {
    assert!(tol.is_positive());
    if r.is_nan() {
        return None;
    }
    // exact dyadic representation r = a / 2^k
    let (mant, e) = r.to_dyadic();
    let (mut num, mut den) = if e >= 0 {
        (mant << e as u64, BigInt::one())
    } else {
        (mant, BigInt::one() << (-e) as u64)
    };
    // continued-fraction expansion by the Euclidean algorithm
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let mut best: Option<Rational> = None;
    loop {
        if den.is_zero() {
            break;
        }
        let a = num.div_floor(&den);
        let rem = &num - &a * &den;
        let p = &a * &p0 + &p1;
        let q = &a * &q0 + &q1;
        if &q > max_den {
            break;
        }
        best = Some(Rational::new(p.clone(), q.clone()));
        p1 = p0;
        q1 = q0;
        p0 = p;
        q0 = q;
        num = den;
        den = rem;
    }
    let cand = best?;
    let bits = r.bits() + 64;
    let approx = Real::from_rational(&cand, bits);
    if (&approx - r).abs() < *tol {
        Some(cand)
    } else {
        None
    }
}

/// Convenience wrapper taking plain integer bounds.
pub fn rationalize_simple(r: &Real, max_den: u64, tol: &Real) -> Option<Rational> {
    rationalize(r, &BigInt::from(max_den), tol)
}

/// p-adic valuation of a non-zero rational.
pub fn padic_valuation(x: &Rational, p: u64) -> i64 {
    assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = x.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = x.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Ctx;

    #[test]
    fn identifies_17_36() {
        let c = Ctx::with_bits(256);
        let r = c.real_ratio(17, 36);
        let tol = Real::parse_decimal("1e-20", 128).unwrap();
        let got = rationalize_simple(&r, 10_000, &tol).unwrap();
        assert_eq!(got, rat_i64(17, 36));
    }

    #[test]
    fn identifies_half() {
        let c = Ctx::with_bits(192);
        let got = rationalize_simple(&c.real_f64(0.5), 100, &c.tol()).unwrap();
        assert_eq!(got, rat_i64(1, 2));
    }

    #[test]
    fn pi_is_not_rational_within_tolerance() {
        let c = Ctx::with_bits(256);
        let tol = Real::parse_decimal("1e-12", 128).unwrap();
        assert!(rationalize_simple(&c.pi(), 50, &tol).is_none());
        // ...but 22/7 is accepted at a loose tolerance
        let loose = Real::parse_decimal("1e-2", 128).unwrap();
        assert_eq!(rationalize_simple(&c.pi(), 50, &loose).unwrap(), rat_i64(22, 7));
    }

    #[test]
    fn negative_values() {
        let c = Ctx::with_bits(192);
        let r = c.real_ratio(-5, 12);
        let got = rationalize_simple(&r, 100, &c.tol()).unwrap();
        assert_eq!(got, rat_i64(-5, 12));
    }

    #[test]
    fn idempotent_across_precision_doubling() {
        let c = Ctx::with_bits(256);
        let vals = [(17i64, 36i64), (-1, 2), (3, 16), (205, 32)];
        for (p, q) in vals {
            let a = rationalize_simple(&c.real_ratio(p, q), 10_000, &c.tol()).unwrap();
            let c2 = c.doubled();
            let b = rationalize_simple(&c2.real_ratio(p, q), 10_000, &c2.tol()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, rat_i64(p, q));
        }
    }

    #[test]
    fn valuation() {
        let x = rat_i64(360, 7);
        assert_eq!(padic_valuation(&x, 2), 3);
        assert_eq!(padic_valuation(&x, 3), 2);
        assert_eq!(padic_valuation(&x, 5), 1);
        assert_eq!(padic_valuation(&x, 7), -1);
        assert_eq!(padic_valuation(&x, 11), 0);
    }
}
