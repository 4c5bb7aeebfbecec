//! Summation engine: direct summation inside the unit disk and numerical
//! analytic continuation outside it.
//!
//! A series is described by its term ratio c_{n+1}/c_n = P(n)/Q(n) with
//! polynomial P, Q of equal degree and equal leading coefficients. The
//! annihilating operator L = Q(theta-1) - z P(theta) (theta = z d/dz)
//! applied to the generating series leaves the constant Q(-1) c_0, which
//! the Taylor stepper transports along a path in the z-plane.

pub mod eval;
pub mod operator;
pub mod path;
pub mod stepper;

pub use eval::{eval_anywhere, theta_vector, CutSide};
pub use operator::{build_annihilator, HoloOperator};
pub use path::ContinuationPath;
pub use stepper::continue_path;

use crate::error::{Error, Result};
use crate::numerics::{Complex, Ctx, Real};

/// Polynomial with `Real` coefficients, ascending powers.
pub type Poly = Vec<Real>;

/// prod_i (n + offsets[i]) as a monic polynomial in n.
pub fn poly_from_offsets(offsets: &[Real], bits: usize) -> Poly {
    let mut coeffs = vec![Real::from_u64(1, bits)];
    for off in offsets {
        // multiply by (n + off)
        let mut next = vec![Real::zero(bits); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] + &(c * off);
        }
        coeffs = next;
    }
    coeffs
}

pub fn poly_eval(coeffs: &[Real], x: &Real) -> Real {
    let bits = x.bits().max(coeffs.first().map(|c| c.bits()).unwrap_or(64));
    let mut acc = Real::zero(bits);
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn poly_eval_u64(coeffs: &[Real], n: u64) -> Real {
    let bits = coeffs.first().map(|c| c.bits()).unwrap_or(64);
    poly_eval(coeffs, &Real::from_u64(n, bits))
}

/// Coefficients of p(t + delta).
pub fn poly_shift(coeffs: &[Real], delta: &Real) -> Poly {
    let bits = delta.bits().max(coeffs.first().map(|c| c.bits()).unwrap_or(64));
    let mut res: Poly = vec![];
    for c in coeffs.iter().rev() {
        // res = res * (t + delta) + c
        let mut next = vec![Real::zero(bits); res.len() + 1];
        for (i, r) in res.iter().enumerate() {
            next[i + 1] = &next[i + 1] + r;
            next[i] = &next[i] + &(r * delta);
        }
        if next.is_empty() {
            next.push(Real::zero(bits));
        }
        next[0] = &next[0] + c;
        res = next;
    }
    if res.is_empty() {
        res.push(Real::zero(bits));
    }
    res
}

/// Hypergeometric-type term ratio c_{n+1} = c_n P(n)/Q(n), c_0 = `first`.
///
/// `shift` is the affine index offset: weights supplied to the evaluator
/// act on n' = n + shift.
#[derive(Clone, Debug)]
pub struct TermRatio {
    pub p: Poly,
    pub q: Poly,
    pub first: Real,
    pub shift: Real,
}

impl TermRatio {
    pub fn new(p: Poly, q: Poly, first: Real, shift: Real) -> Result<Self> {
        if p.is_empty() || p.iter().all(|c| c.is_zero()) {
            return Err(Error::DegenerateRatio("P is zero".into()));
        }
        if q.is_empty() || q.iter().all(|c| c.is_zero()) {
            return Err(Error::DegenerateRatio("Q is zero".into()));
        }
        if p.len() != q.len() {
            return Err(Error::DegenerateRatio(format!(
                "deg P = {} != deg Q = {}",
                p.len() - 1,
                q.len() - 1
            )));
        }
        let lp = p.last().unwrap();
        let lq = q.last().unwrap();
        let rel_tol = &lp.abs() * &Real::pow2(-(lp.bits() as i32) + 16, 64);
        if (lp - lq).abs() > rel_tol {
            return Err(Error::DegenerateRatio("leading coefficients differ".into()));
        }
        Ok(TermRatio { p, q, first, shift })
    }

    /// Ratio built from linear factors: P(n) = prod (n + num_offsets[i]),
    /// Q(n) = prod (n + den_offsets[i]).
    pub fn from_offsets(
        num_offsets: &[Real],
        den_offsets: &[Real],
        first: Real,
        shift: Real,
        ctx: &Ctx,
    ) -> Result<Self> {
        if num_offsets.len() != den_offsets.len() {
            return Err(Error::DegenerateRatio(
                "numerator and denominator degrees differ".into(),
            ));
        }
        // Q(n) must not vanish at any integer n >= 0: offsets must not be
        // non-positive integers.
        for off in den_offsets {
            let r = off.round_to_bigint();
            let back = Real::from_bigint(&r, ctx.bits());
            if (&back - off).abs() < Real::pow2(-(ctx.bits() as i32) + 16, 64)
                && !off.is_positive()
            {
                return Err(Error::DegenerateRatio(format!(
                    "denominator offset {} gives an integer root",
                    off
                )));
            }
        }
        Ok(TermRatio {
            p: poly_from_offsets(num_offsets, ctx.bits()),
            q: poly_from_offsets(den_offsets, ctx.bits()),
            first,
            shift,
        })
    }

    pub fn order(&self) -> usize {
        self.p.len() - 1
    }
}

/// Direct summation sum_{n>=0} c_n z^n for |z| < 1.
pub fn sum_direct(tr: &TermRatio, z: &Complex, ctx: &Ctx) -> Result<Complex> {
    Ok(theta_sums_direct(tr, z, 1, ctx)?.pop().unwrap())
}

/// Direct evaluation of the theta-weighted sums sum c_n n^k z^n for
/// k = 0..count.
pub fn theta_sums_direct(
    tr: &TermRatio,
    z: &Complex,
    count: usize,
    ctx: &Ctx,
) -> Result<Vec<Complex>> {
    let bits = ctx.bits();
    let zmag = z.mag1();
    if zmag >= Real::from_u64(1, 64) {
        return Err(Error::NonConvergent(format!("{:.4}", zmag.to_f64())));
    }
    let mut sums = vec![Complex::zero(bits); count];
    let mut term = Complex::from_real(ctx.zero() + &tr.first);
    let threshold = Real::pow2(-(bits as i32) - 8, 64);
    let mut below = 0usize;
    let mut n = 0u64;
    loop {
        let mut npow = 1u64;
        for sum in sums.iter_mut() {
            *sum = &*sum + &term.mul_u64(npow);
            npow = npow.saturating_mul(n);
        }
        // weight-adjusted smallness: the largest accumulated weight is n^(count-1)
        let weight = (n.max(1)).saturating_pow(count.saturating_sub(1) as u32);
        if term.mag1().mul_u64(weight) < threshold {
            below += 1;
            if below >= 3 && n >= 8 {
                break;
            }
        } else {
            below = 0;
        }
        if n > (64 * bits) as u64 {
            return Err(Error::PrecisionExhaustion(format!(
                "direct sum at |z| = {:.4} did not settle",
                zmag.to_f64()
            )));
        }
        let pn = poly_eval_u64(&tr.p, n);
        let qn = poly_eval_u64(&tr.q, n);
        if qn.is_zero() {
            return Err(Error::DegenerateRatio(format!("Q({}) = 0", n)));
        }
        term = term.scale(&(&pn / &qn));
        term = &term * z;
        n += 1;
    }
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_helpers() {
        let bits = 192;
        let offs = [Real::from_u64(1, bits), Real::from_u64(2, bits)];
        let p = poly_from_offsets(&offs, bits); // (n+1)(n+2) = 2 + 3n + n^2
        assert_eq!(p.len(), 3);
        assert_eq!(p[0].to_f64(), 2.0);
        assert_eq!(p[1].to_f64(), 3.0);
        assert_eq!(p[2].to_f64(), 1.0);
        let shifted = poly_shift(&p, &Real::from_i64(-1, bits)); // t(t+1) = t + t^2
        assert_eq!(shifted[0].to_f64(), 0.0);
        assert_eq!(shifted[1].to_f64(), 1.0);
        assert_eq!(shifted[2].to_f64(), 1.0);
    }

    #[test]
    fn geometric_direct() {
        let ctx = Ctx::with_bits(256);
        let tr = TermRatio::new(
            vec![ctx.one()],
            vec![ctx.one()],
            ctx.one(),
            ctx.zero(),
        )
        .unwrap();
        let z = Complex::from_real(ctx.real_ratio(1, 2));
        let s = sum_direct(&tr, &z, &ctx).unwrap();
        assert!((&s.re - &ctx.real_u64(2)).abs() < ctx.tol());
        assert!(s.im.is_zero() || s.im.abs() < ctx.tol());
    }

    #[test]
    fn non_convergent_rejected() {
        let ctx = Ctx::with_bits(192);
        let tr =
            TermRatio::new(vec![ctx.one()], vec![ctx.one()], ctx.one(), ctx.zero()).unwrap();
        let z = Complex::from_real(ctx.real_u64(2));
        assert!(matches!(sum_direct(&tr, &z, &ctx), Err(Error::NonConvergent(_))));
    }

    #[test]
    fn degenerate_ratio_rejected() {
        let ctx = Ctx::with_bits(192);
        assert!(TermRatio::new(vec![], vec![ctx.one()], ctx.one(), ctx.zero()).is_err());
        assert!(TermRatio::from_offsets(
            &[ctx.one()],
            &[ctx.real_i64(-2)],
            ctx.one(),
            ctx.zero(),
            &ctx
        )
        .is_err());
    }
}
