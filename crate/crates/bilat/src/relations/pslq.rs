//! PSLQ integer-relation detection.
//!
//! Standard one-level PSLQ with `Real` internals and exact integer
//! bookkeeping matrices, following the classical Bailey formulation.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::numerics::real::Real;
use crate::numerics::Ctx;

#[derive(Clone, Debug)]
pub struct IntegerRelation {
    pub coefficients: Vec<BigInt>,
    pub norm_bound: BigInt,
    pub residual: Real,
}

fn round_real(x: &Real) -> BigInt {
    x.round_to_bigint()
}

/// Search for a non-trivial integer relation among `values` with
/// coefficients bounded by `max_coeff`. Returns None when no relation
/// exists within the bound at this precision.
pub fn pslq(values: &[Real], max_coeff: &BigInt, ctx: &Ctx) -> Option<IntegerRelation> {
    let n = values.len();
    assert!(n >= 2, "pslq needs at least two values");
    let bits = ctx.bits();
    let tol = Real::pow2(-((bits * 3 / 4) as i32), 64);

    // a zero entry is already a relation
    let maxmag = values
        .iter()
        .map(|v| v.abs())
        .fold(Real::zero(64), |a, b| if b > a { b } else { a });
    if maxmag.is_zero() {
        return None;
    }
    for (i, v) in values.iter().enumerate() {
        if (&v.abs() / &maxmag) < tol {
            let mut coeffs = vec![BigInt::zero(); n];
            coeffs[i] = BigInt::from(1);
            return Some(IntegerRelation {
                coefficients: coeffs,
                norm_bound: BigInt::zero(),
                residual: v.abs(),
            });
        }
    }

    let gamma = (&Real::from_u64(4, bits) / &Real::from_u64(3, bits)).sqrt();
    let mut y: Vec<Real> = values.to_vec();
    // partial norms s_k = sqrt(sum_{j>=k} x_j^2)
    let mut s = vec![Real::zero(bits); n];
    let mut acc = Real::zero(bits);
    for k in (0..n).rev() {
        acc = &acc + &(&y[k] * &y[k]);
        s[k] = acc.sqrt();
    }
    let t = s[0].clone();
    for k in 0..n {
        y[k] = &y[k] / &t;
        s[k] = &s[k] / &t;
    }

    let mut h = vec![vec![Real::zero(bits); n - 1]; n];
    for i in 0..n {
        if i + 1 < n {
            h[i][i] = &s[i + 1] / &s[i];
        }
        for j in 0..i.min(n - 1) {
            h[i][j] = -&(&(&y[i] * &y[j]) / &(&s[j] * &s[j + 1]));
        }
    }

    let mut b: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();

    // initial size reduction
    for i in 1..n {
        for j in (0..i.min(n - 1)).rev() {
            if h[j][j].is_zero() {
                continue;
            }
            let t = round_real(&(&h[i][j] / &h[j][j]));
            if t.is_zero() {
                continue;
            }
            let tr = Real::from_bigint(&t, bits);
            y[j] = &y[j] + &(&tr * &y[i]);
            for k in 0..=j {
                h[i][k] = &h[i][k] - &(&tr * &h[j][k]);
            }
            for r in b.iter_mut() {
                let add = &r[i] * &t;
                r[j] += add;
            }
        }
    }

    let max_steps = 64 + 24 * n + bits;
    for _ in 0..max_steps {
        // check for a completed relation
        for i in 0..n {
            if y[i].abs() < tol {
                let coeffs: Vec<BigInt> = (0..n).map(|r| b[r][i].clone()).collect();
                let height = coeffs.iter().map(|c| c.abs()).max().unwrap();
                if coeffs.iter().any(|c| !c.is_zero()) && &height <= max_coeff {
                    return finish(values, coeffs, ctx);
                }
            }
        }

        // norm bound: no relation smaller than 1/max|H| exists
        let mut maxh = Real::zero(bits);
        for row in &h {
            for v in row {
                let a = v.abs();
                if a > maxh {
                    maxh = a;
                }
            }
        }
        if !maxh.is_zero() {
            let bound = maxh.recip().div_u64(100).floor_to_bigint();
            if &bound > max_coeff {
                return None;
            }
        }

        // pivot: maximize gamma^i |h[i][i]|
        let mut m = 0usize;
        let mut best = Real::zero(bits);
        let mut g = Real::from_u64(1, bits);
        for (i, row) in h.iter().enumerate().take(n - 1) {
            g = &g * &gamma;
            let v = &g * &row[i].abs();
            if v > best {
                best = v;
                m = i;
            }
        }

        y.swap(m, m + 1);
        h.swap(m, m + 1);
        for r in b.iter_mut() {
            r.swap(m, m + 1);
        }

        // remove the corner created by the swap
        if m + 2 < n {
            let t0 = (&(&h[m][m] * &h[m][m]) + &(&h[m][m + 1] * &h[m][m + 1])).sqrt();
            if t0.is_zero() {
                return None;
            }
            let t1 = &h[m][m] / &t0;
            let t2 = &h[m][m + 1] / &t0;
            for row in h.iter_mut().skip(m) {
                let a = row[m].clone();
                let c = row[m + 1].clone();
                row[m] = &(&t1 * &a) + &(&t2 * &c);
                row[m + 1] = &(&t1 * &c) - &(&t2 * &a);
            }
        }

        // size-reduce
        for i in m + 1..n {
            for j in (0..=(i - 1).min(m + 1)).rev() {
                if j >= n - 1 || h[j][j].is_zero() {
                    continue;
                }
                let t = round_real(&(&h[i][j] / &h[j][j]));
                if t.is_zero() {
                    continue;
                }
                let tr = Real::from_bigint(&t, bits);
                y[j] = &y[j] + &(&tr * &y[i]);
                for k in 0..=j {
                    h[i][k] = &h[i][k] - &(&tr * &h[j][k]);
                }
                for r in b.iter_mut() {
                    let add = &r[i] * &t;
                    r[j] += add;
                }
            }
        }
    }
    None
}

fn finish(values: &[Real], mut coeffs: Vec<BigInt>, ctx: &Ctx) -> Option<IntegerRelation> {
    // canonical sign: first non-zero coefficient positive
    if let Some(first) = coeffs.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        }
    }
    let bits = ctx.bits();
    let mut acc = Real::zero(bits);
    for (c, v) in coeffs.iter().zip(values) {
        acc = &acc + &(&Real::from_bigint(c, bits) * v);
    }
    let residual = acc.abs();
    // accept only honest relations
    if residual > Real::pow2(-((bits / 2) as i32), 64) {
        return None;
    }
    let norm_bound = coeffs.iter().map(|c| c.abs()).max().unwrap();
    Some(IntegerRelation { coefficients: coeffs, norm_bound, residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_multiple() {
        let c = Ctx::with_bits(256);
        let rel = pslq(&[c.one(), c.real_u64(2)], &BigInt::from(10), &c).unwrap();
        assert_eq!(rel.coefficients, vec![BigInt::from(2), BigInt::from(-1)]);
    }

    #[test]
    fn golden_ratio_power_relation() {
        // phi^2 - 11 phi - 1 = 0 for phi = (11+5 sqrt5)/2
        let c = Ctx::with_bits(512);
        let phi = &(&c.real_u64(11) + &(&c.real_u64(5) * &c.real_u64(5).sqrt())).ldexp(-1);
        let vals = [c.one(), phi.clone(), phi * phi];
        let rel = pslq(&vals, &BigInt::from(100), &c).unwrap();
        assert_eq!(
            rel.coefficients,
            vec![BigInt::from(1), BigInt::from(11), BigInt::from(-1)]
        );
        assert!(rel.residual < Real::pow2(-200, 64));
    }

    #[test]
    fn no_relation_among_pi_and_e() {
        let c = Ctx::with_digits(200);
        let pi = c.pi();
        let e = c.one().exp();
        assert!(pslq(&[c.one(), pi, e], &BigInt::from(1000), &c).is_none());
    }

    #[test]
    fn zero_entry_is_unit_relation() {
        let c = Ctx::with_bits(256);
        let rel = pslq(&[c.one(), c.zero(), c.pi()], &BigInt::from(10), &c).unwrap();
        assert_eq!(
            rel.coefficients,
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)]
        );
    }

    #[test]
    fn rerun_at_doubled_precision_shrinks_residual() {
        let c = Ctx::with_bits(320);
        let s2 = c.real_u64(2).sqrt();
        let s8 = c.real_u64(8).sqrt();
        let rel = pslq(&[s2, s8], &BigInt::from(10), &c).unwrap();
        assert_eq!(rel.coefficients, vec![BigInt::from(2), BigInt::from(-1)]);
        let c2 = c.doubled();
        let s2 = c2.real_u64(2).sqrt();
        let s8 = c2.real_u64(8).sqrt();
        let mut acc = c2.zero();
        for (co, v) in rel.coefficients.iter().zip([&s2, &s8]) {
            acc = &acc + &(&c2.real_bigint(co) * v);
        }
        assert!(acc.abs() < Real::pow2(-(c.bits() as i32), 64));
    }
}
