//! Log-gamma, polygamma and Pochhammer at arbitrary precision.
//!
//! Arguments are lifted by the functional recurrence until they clear a
//! precision-dependent threshold, then the Stirling-type asymptotic series
//! with exact Bernoulli coefficients is applied. `log_gamma` returns the
//! log of |Gamma| together with the sign of Gamma, so Pochhammers at
//! negative non-integer arguments keep exact signs without complex
//! logarithms.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::real::Real;
use super::Ctx;
use crate::error::{Error, Result};

static BERNOULLI: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// B_n as an exact rational, cached. Uses the defining recurrence
/// sum_{k=0}^{n} C(n+1,k) B_k = 0.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = BERNOULLI.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * &binom;
            }
            // C(m+1, k+1) = C(m+1, k) * (m+1-k) / (k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let bm = -acc / BigRational::from(BigInt::from(m + 1));
        cache.push(bm);
    }
    cache[n].clone()
}

fn is_nonpositive_integer(y: &Real, bits: usize) -> bool {
    if y.is_positive() {
        return false;
    }
    let r = y.round_to_bigint();
    let back = Real::from_bigint(&r, bits + 64);
    (&back - y).abs() < Real::pow2(-(bits as i32) + 8, 64)
}

/// Shift threshold for the asymptotic series at `bits` working precision.
fn lift_threshold(bits: usize) -> u64 {
    ((bits as f64) * 0.21).ceil() as u64 + 16
}

/// ln |Gamma(y)| and the sign of Gamma(y) for real non-pole y.
pub fn log_gamma(y: &Real, ctx: &Ctx) -> Result<(Real, i8)> {
    let bits = ctx.bits();
    if y.is_nan() {
        return Err(Error::Numeric("log_gamma of NaN".into()));
    }
    if is_nonpositive_integer(y, bits) {
        return Err(Error::Pole(format!("Gamma pole at {}", y)));
    }
    let threshold = Real::from_u64(lift_threshold(bits), bits);
    let mut sign = 1i8;
    let mut shift_log = Real::zero(bits);
    let mut t = y.clone();
    // lnGamma(y) = lnGamma(y+m) - sum ln|y+i|, sign flips with negative factors
    while t < threshold {
        if t.is_negative() {
            sign = -sign;
        }
        shift_log = &shift_log + &t.abs().ln();
        t = &t + &Real::from_u64(1, bits);
    }
    // Stirling: (t-1/2)ln t - t + ln(2pi)/2 + sum B_2k / (2k(2k-1) t^(2k-1))
    let half = Real::pow2(-1, bits);
    let ln2pi = (Real::pi(bits).ldexp(1)).ln();
    let mut acc = &(&(&t - &half) * &t.ln()) - &t;
    acc = &acc + &ln2pi.ldexp(-1);
    let t2inv = t.powi(2).recip();
    let mut tpow = t.recip(); // t^{-(2k-1)}
    let tol = Real::pow2(-(bits as i32) - 16, 64);
    let mut k = 1usize;
    loop {
        let b2k = bernoulli(2 * k);
        let coeff = &Real::from_rational(&b2k, bits)
            / &Real::from_u64((2 * k * (2 * k - 1)) as u64, bits);
        let term = &coeff * &tpow;
        acc = &acc + &term;
        if term.abs() < tol {
            break;
        }
        if k > bits / 2 + 32 {
            return Err(Error::PrecisionExhaustion(
                "Stirling series did not reach tolerance".into(),
            ));
        }
        tpow = &tpow * &t2inv;
        k += 1;
    }
    Ok((&acc - &shift_log, sign))
}

/// psi^(m)(y) for 0 <= m <= 4 and real non-pole y.
pub fn polygamma(m: usize, y: &Real, ctx: &Ctx) -> Result<Real> {
    assert!(m <= 4, "polygamma order restricted to 0..=4");
    let bits = ctx.bits();
    if is_nonpositive_integer(y, bits) {
        return Err(Error::Pole(format!("polygamma pole at {}", y)));
    }
    let threshold = Real::from_u64(lift_threshold(bits), bits);
    let mut t = y.clone();
    let mut lift = Real::zero(bits);
    // psi^(m)(y) = psi^(m)(y+1) - (-1)^m m! / y^(m+1)
    let mfact = (1..=m).product::<usize>().max(1) as u64;
    let msign = if m % 2 == 0 { 1i64 } else { -1 };
    while t < threshold {
        let p = t.powi(m + 1).recip().mul_u64(mfact).mul_i64(msign);
        lift = &lift - &p;
        t = &t + &Real::from_u64(1, bits);
    }
    let tol = Real::pow2(-(bits as i32) - 16, 64);
    let tinv = t.recip();
    let t2inv = tinv.powi(2);
    let acc = if m == 0 {
        // ln t - 1/(2t) - sum B_2k/(2k t^2k)
        let mut acc = &t.ln() - &tinv.ldexp(-1);
        let mut tpow = t2inv.clone();
        let mut k = 1usize;
        loop {
            let b2k = bernoulli(2 * k);
            let term = &Real::from_rational(&b2k, bits).div_u64(2 * k as u64) * &tpow;
            acc = &acc - &term;
            if term.abs() < tol {
                break;
            }
            if k > bits / 2 + 32 {
                return Err(Error::PrecisionExhaustion("digamma asymptotic stalled".into()));
            }
            tpow = &tpow * &t2inv;
            k += 1;
        }
        acc
    } else {
        // (-1)^(m-1) [ (m-1)!/t^m + m!/(2 t^(m+1))
        //              + sum B_2k (2k+m-1)!/((2k)! t^(2k+m)) ]
        let m1fact = (1..m).product::<usize>().max(1) as u64;
        let mut acc = tinv.powi(m).mul_u64(m1fact);
        acc = &acc + &tinv.powi(m + 1).mul_u64(mfact).ldexp(-1);
        let mut tpow = tinv.powi(m + 2); // t^-(2k+m), k=1
        let mut k = 1usize;
        loop {
            let b2k = bernoulli(2 * k);
            // (2k+m-1)!/(2k)! = (2k+1)(2k+2)...(2k+m-1)
            let mut rising = 1u64;
            for i in 1..m {
                rising *= (2 * k + i) as u64;
            }
            let term = &Real::from_rational(&b2k, bits).mul_u64(rising) * &tpow;
            acc = &acc + &term;
            if term.abs() < tol {
                break;
            }
            if k > bits / 2 + 32 {
                return Err(Error::PrecisionExhaustion("polygamma asymptotic stalled".into()));
            }
            tpow = &tpow * &t2inv;
            k += 1;
        }
        if m % 2 == 0 {
            acc = -acc;
        }
        acc
    };
    Ok(&acc + &lift)
}

/// Pochhammer (a)_y = Gamma(a+y)/Gamma(a) with sign tracking.
pub fn pochhammer(a: &Real, y: &Real, ctx: &Ctx) -> Result<Real> {
    let (lg_num, s_num) = log_gamma(&(a + y), ctx)?;
    let (lg_den, s_den) = log_gamma(a, ctx)?;
    let v = (&lg_num - &lg_den).exp();
    Ok(if s_num * s_den < 0 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        Ctx::with_bits(320)
    }

    fn assert_close(a: &Real, b: &Real, bits: i32) {
        let scale = b.abs().exponent().unwrap_or(0);
        assert!(
            (a - b).abs() < Real::pow2(scale - bits, 64),
            "{} != {} to {} bits",
            a,
            b,
            bits
        );
    }

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli(0), BigRational::one());
        assert_eq!(bernoulli(1), BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(bernoulli(2), BigRational::new(BigInt::from(1), BigInt::from(6)));
        assert_eq!(bernoulli(12), BigRational::new(BigInt::from(-691), BigInt::from(2730)));
    }

    #[test]
    fn log_gamma_classics() {
        let c = ctx();
        let (lg1, s1) = log_gamma(&c.one(), &c).unwrap();
        assert!(lg1.abs() < c.tol());
        assert_eq!(s1, 1);

        // Gamma(1/2) = sqrt(pi)
        let (lg, s) = log_gamma(&c.real_ratio(1, 2), &c).unwrap();
        assert_eq!(s, 1);
        assert_close(&lg, &c.pi().sqrt().ln(), 240);

        // Gamma(7/2) = 15 sqrt(pi) / 8
        let (lg72, _) = log_gamma(&c.real_ratio(7, 2), &c).unwrap();
        let expect = (&c.pi().sqrt().mul_u64(15).div_u64(8)).ln();
        assert_close(&lg72, &expect, 240);

        // Gamma(-1/2) = -2 sqrt(pi): negative
        let (lgm, sm) = log_gamma(&c.real_ratio(-1, 2), &c).unwrap();
        assert_eq!(sm, -1);
        assert_close(&lgm, &c.pi().sqrt().ldexp(1).ln(), 240);
    }

    #[test]
    fn log_gamma_pole() {
        let c = ctx();
        assert!(log_gamma(&c.zero(), &c).is_err());
        assert!(log_gamma(&c.real_i64(-3), &c).is_err());
    }

    #[test]
    fn digamma_classics() {
        let c = ctx();
        // gamma = 0.57721...; 60-digit reference value
        let gamma = Real::parse_decimal(
            "0.577215664901532860606512090082402431042159335939923598805767",
            c.bits(),
        )
        .unwrap();
        let psi1 = polygamma(0, &c.one(), &c).unwrap();
        assert_close(&psi1, &-&gamma, 190);

        // psi(1/2) = -gamma - 2 ln 2
        let psi_half = polygamma(0, &c.real_ratio(1, 2), &c).unwrap();
        let expect = &(-&gamma) - &Real::ln2(c.bits()).ldexp(1);
        assert_close(&psi_half, &expect, 190);

        // psi'(1) = pi^2/6
        let tri = polygamma(1, &c.one(), &c).unwrap();
        assert_close(&tri, &c.pi().powi(2).div_u64(6), 240);

        // psi'''(1) = pi^4/15
        let tet = polygamma(3, &c.one(), &c).unwrap();
        assert_close(&tet, &c.pi().powi(4).div_u64(15), 240);
    }

    #[test]
    fn pochhammer_examples() {
        let c = ctx();
        let half = c.real_ratio(1, 2);
        // (1/2)_0 = 1
        let p0 = pochhammer(&half, &c.zero(), &c).unwrap();
        assert_close(&p0, &c.one(), 240);
        // (1/2)_3 = 15/8
        let p3 = pochhammer(&half, &c.real_u64(3), &c).unwrap();
        assert_close(&p3, &c.real_ratio(15, 8), 240);
        // (1/2)_{1/2} = 1/sqrt(pi)
        let ph = pochhammer(&half, &half, &c).unwrap();
        assert_close(&ph, &c.pi().sqrt().recip(), 240);
    }

    #[test]
    fn pochhammer_recurrence_property() {
        let c = ctx();
        // (a)_{y+1} = (a)_y (a+y) over a small grid of awkward points
        for (a, y) in [(0.3, -0.45), (1.7, 2.3), (0.125, 4.6), (1.99, -0.49)] {
            let a = c.real_f64(a);
            let y = c.real_f64(y);
            let lhs = pochhammer(&a, &(&y + &c.one()), &c).unwrap();
            let rhs = &pochhammer(&a, &y, &c).unwrap() * &(&a + &y);
            assert_close(&lhs, &rhs, 230);
        }
    }

    #[test]
    fn reflection_properties() {
        let c = ctx();
        // 1/(1)_{-n+x} = (-1)^(n+1) (1-x)_n/(1)_x * x/(n-x)
        // (s)_{-n+x}   = (-1)^n (s)_x / (1-s-x)_n
        let one = c.one();
        for xf in [1.0 / 7.0, -1.0 / 7.0, 0.3] {
            let x = c.real_f64(xf);
            for n in 1u64..=8 {
                let nr = c.real_u64(n);
                let lhs = pochhammer(&one, &(&x - &nr), &c).unwrap().recip();
                let sign = if n % 2 == 1 { 1i64 } else { -1 };
                let rhs = &(&pochhammer(&(&one - &x), &nr, &c).unwrap()
                    / &pochhammer(&one, &x, &c).unwrap())
                    * &(&x / &(&nr - &x));
                assert_close(&lhs, &rhs.mul_i64(sign), 210);

                for s in [0.5, 1.0 / 3.0, 0.125] {
                    let s = c.real_f64(s);
                    let lhs = pochhammer(&s, &(&x - &nr), &c).unwrap();
                    let den = pochhammer(&(&(&one - &s) - &x), &nr, &c).unwrap();
                    let rhs = &pochhammer(&s, &x, &c).unwrap() / &den;
                    let sign = if n % 2 == 0 { 1i64 } else { -1 };
                    assert_close(&lhs, &rhs.mul_i64(sign), 210);
                }
            }
        }
    }

    #[test]
    fn doubled_precision_agreement() {
        let c = ctx();
        let c2 = c.doubled();
        let y = c.real_f64(0.37);
        let (a, _) = log_gamma(&y, &c).unwrap();
        let (b, _) = log_gamma(&c2.real_f64(0.37), &c2).unwrap();
        assert!((&a - &b).abs() < c.tol());
        let pa = polygamma(2, &y, &c).unwrap();
        let pb = polygamma(2, &c2.real_f64(0.37), &c2).unwrap();
        assert!((&pa - &pb).abs() < &c.tol() * &pa.abs());
    }
}
