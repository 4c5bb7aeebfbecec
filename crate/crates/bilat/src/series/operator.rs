//! Annihilating operators in theta-form.

use super::{poly_shift, TermRatio};
use crate::error::{Error, Result};
use crate::numerics::{Complex, Ctx, Real};

/// L = sum_k A_k(z) theta^k with A_k(z) = alpha_k + beta_k z, together with
/// the constant inhomogeneity: L[y] = inhom for the generating series y.
#[derive(Clone, Debug)]
pub struct HoloOperator {
    pub alpha: Vec<Real>,
    pub beta: Vec<Real>,
    pub inhom: Real,
    /// theta -> d/dz conversion, folded once:
    /// B_j(z) = z^j (gamma_j + delta_j z).
    pub(crate) gamma: Vec<Real>,
    pub(crate) delta: Vec<Real>,
}

impl HoloOperator {
    pub fn order(&self) -> usize {
        self.alpha.len() - 1
    }

    /// Apply to a truncated series sum_{n<=N} c_n z^n. The result is
    /// inhom + O(z^{N+1}) when the coefficients obey the term ratio; used
    /// as an oracle in tests.
    pub fn apply_to_truncated(&self, coeffs: &[Complex], z: &Complex, ctx: &Ctx) -> Complex {
        let bits = ctx.bits();
        let mut acc = Complex::zero(bits);
        let mut zpow = Complex::from_real(ctx.one());
        // Q(theta-1) part: sum_n A(n-1)... alpha encodes Q(t-1), beta = -P
        for (n, c) in coeffs.iter().enumerate() {
            let mut qn = Real::zero(bits);
            let mut npow = ctx.one();
            let nreal = ctx.real_u64(n as u64);
            for a in &self.alpha {
                qn = &qn + &(a * &npow);
                npow = &npow * &nreal;
            }
            let w = c.scale(&qn);
            acc = &acc + &(&w * &zpow);
            zpow = &zpow * z;
        }
        // -z P(theta) part: beta_k are coefficients of -P
        let mut zpow = z.clone();
        for (n, c) in coeffs.iter().enumerate() {
            let mut pn = Real::zero(bits);
            let mut npow = ctx.one();
            let nreal = ctx.real_u64(n as u64);
            for b in &self.beta {
                pn = &pn + &(b * &npow);
                npow = &npow * &nreal;
            }
            let w = c.scale(&pn);
            acc = &acc + &(&w * &zpow);
            zpow = &zpow * z;
        }
        acc
    }
}

/// Stirling numbers of the second kind, S(k, j) for k, j <= kmax.
pub(crate) fn stirling2(kmax: usize) -> Vec<Vec<u64>> {
    let mut s = vec![vec![0u64; kmax + 1]; kmax + 1];
    s[0][0] = 1;
    for k in 1..=kmax {
        for j in 1..=k {
            s[k][j] = (j as u64) * s[k - 1][j] + s[k - 1][j - 1];
        }
    }
    s
}

/// Encode c_{n+1} Q(n) = c_n P(n) as L = Q(theta - 1) - z P(theta), with
/// inhomogeneity Q(-1) c_0.
pub fn build_annihilator(tr: &TermRatio, ctx: &Ctx) -> Result<HoloOperator> {
    if tr.p.iter().all(|c| c.is_zero()) || tr.q.iter().all(|c| c.is_zero()) {
        return Err(Error::DegenerateRatio("zero polynomial".into()));
    }
    let minus_one = ctx.real_i64(-1);
    let alpha = poly_shift(&tr.q, &minus_one);
    let beta: Vec<Real> = tr.p.iter().map(|c| -c).collect();
    let q_minus_1 = super::poly_eval(&tr.q, &minus_one);
    let inhom = &q_minus_1 * &tr.first;
    let m = alpha.len() - 1;
    let s2 = stirling2(m);
    let mut gamma = Vec::with_capacity(m + 1);
    let mut delta = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let mut g = ctx.zero();
        let mut d = ctx.zero();
        for k in j..=m {
            let sk = s2[k][j];
            if sk != 0 {
                g = &g + &alpha[k].mul_u64(sk);
                d = &d + &beta[k].mul_u64(sk);
            }
        }
        gamma.push(g);
        delta.push(d);
    }
    Ok(HoloOperator { alpha, beta, inhom, gamma, delta })
}
