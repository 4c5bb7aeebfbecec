//! Taylor-method transport of a solution vector along a path.

use super::operator::{stirling2, HoloOperator};
use super::path::ContinuationPath;
use crate::error::{Error, Result};
use crate::numerics::{Complex, Ctx, Real};

fn binom_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// (l+1)(l+2)...(l+j) as u64; callers keep l + j comfortably below 2^10.
fn rising_u64(l: usize, j: usize) -> u64 {
    let mut r = 1u64;
    for i in 1..=j {
        r *= (l + i) as u64;
    }
    r
}

/// Solve the theta-vector (y, theta y, ..., theta^{m-1} y) at z for the
/// ordinary derivatives y^{(j)}(z), j = 0..m.
pub fn theta_to_derivs(theta: &[Complex], z: &Complex, ctx: &Ctx) -> Vec<Complex> {
    let m = theta.len();
    let s2 = stirling2(m);
    let mut zpow = vec![Complex::from_real(ctx.one())];
    for j in 1..=m {
        zpow.push(&zpow[j - 1] * z);
    }
    let mut derivs: Vec<Complex> = Vec::with_capacity(m);
    for k in 0..m {
        if k == 0 {
            derivs.push(theta[0].clone());
            continue;
        }
        let mut acc = theta[k].clone();
        for (j, d) in derivs.iter().enumerate().skip(1) {
            let s = s2[k][j];
            if s != 0 {
                acc = &acc - &(&d.mul_u64(s) * &zpow[j]);
            }
        }
        derivs.push(&acc / &zpow[k]);
    }
    derivs
}

/// Inverse of [`theta_to_derivs`].
pub fn derivs_to_theta(derivs: &[Complex], z: &Complex, ctx: &Ctx) -> Vec<Complex> {
    let m = derivs.len();
    let s2 = stirling2(m);
    let mut zpow = vec![Complex::from_real(ctx.one())];
    for j in 1..=m {
        zpow.push(&zpow[j - 1] * z);
    }
    let mut theta = Vec::with_capacity(m);
    for k in 0..m {
        if k == 0 {
            theta.push(derivs[0].clone());
            continue;
        }
        let mut acc = Complex::zero(ctx.bits());
        for (j, d) in derivs.iter().enumerate().take(k + 1).skip(1) {
            let s = s2[k][j];
            if s != 0 {
                acc = &acc + &(&d.mul_u64(s) * &zpow[j]);
            }
        }
        theta.push(acc);
    }
    theta
}

/// One Taylor step: given y^{(j)}(z0), j < m, return y^{(j)}(z0 + h).
fn taylor_step(
    op: &HoloOperator,
    z0: &Complex,
    h: &Complex,
    derivs: &[Complex],
    ctx: &Ctx,
) -> Result<Vec<Complex>> {
    let bits = ctx.bits();
    let m = op.order();
    debug_assert_eq!(derivs.len(), m);

    // Taylor coefficients of B_j(z0+u) = (z0+u)^j (base_j + delta_j u),
    // base_j = gamma_j + delta_j z0.
    let mut z0pow = vec![Complex::from_real(ctx.one())];
    for j in 1..=m + 1 {
        z0pow.push(&z0pow[j - 1] * z0);
    }
    // bcoef[j][i], i <= j+1
    let mut bcoef: Vec<Vec<Complex>> = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let base = &Complex::from_real(op.gamma[j].clone())
            + &z0.scale(&op.delta[j]);
        let mut row = Vec::with_capacity(j + 2);
        for i in 0..=j + 1 {
            let mut v = Complex::zero(bits);
            let c1 = binom_u64(j, i);
            if c1 != 0 {
                v = &v + &(&z0pow[j - i] * &base).mul_u64(c1);
            }
            if i >= 1 {
                let c2 = binom_u64(j, i - 1);
                if c2 != 0 {
                    v = &v + &z0pow[j - i + 1].scale(&op.delta[j]).mul_u64(c2);
                }
            }
            row.push(v);
        }
        bcoef.push(row);
    }
    let lead = bcoef[m][0].clone();
    if lead.mag1() < Real::pow2(-(bits as i32), 64) {
        return Err(Error::StepUnderflow(format!(
            "operator leading coefficient vanishes near {:?}",
            z0.to_f64_pair()
        )));
    }

    // d_l = y^{(l)}(z0)/l!
    let mut d: Vec<Complex> = Vec::new();
    let mut fact = 1u64;
    for (l, dv) in derivs.iter().enumerate() {
        if l > 0 {
            fact *= l as u64;
        }
        d.push(dv.scale(&ctx.real_u64(fact).recip()));
    }

    let habs = h.abs();
    let tol = Real::pow2(-(bits as i32) - 8, 64);
    let max_terms = 8 * bits + 256;
    let mut hpow_abs = habs.powi(m); // |h|^l tracking, starts at l = m
    let mut consecutive_small = 0usize;
    let mut t = 0usize;
    loop {
        // solve for d_{t+m}
        let mut acc = if t == 0 {
            Complex::from_real(ctx.zero() + &op.inhom)
        } else {
            Complex::zero(bits)
        };
        for (j, row) in bcoef.iter().enumerate() {
            for (i, b) in row.iter().enumerate() {
                if j == m && i == 0 {
                    continue;
                }
                if i > t {
                    continue;
                }
                let l = t - i;
                let idx = l + j;
                if idx >= d.len() {
                    continue;
                }
                let f = rising_u64(l, j);
                acc = &acc - &(&d[idx].mul_u64(f) * b);
            }
        }
        let denom = lead.mul_u64(rising_u64(t, m));
        let dnew = &acc / &denom;
        let mag = &dnew.mag1() * &hpow_abs;
        d.push(dnew);

        let l = t + m;
        // allow for the rising-factorial growth of derivative evaluations
        let weight = ((l + m) as u64).pow(m as u32);
        if mag.mul_u64(weight) < tol {
            consecutive_small += 1;
            if consecutive_small >= 8 && l > m + 8 {
                break;
            }
        } else {
            consecutive_small = 0;
        }
        if l > max_terms {
            return Err(Error::PrecisionExhaustion(format!(
                "Taylor step at {:?} needed more than {} terms",
                z0.to_f64_pair(),
                max_terms
            )));
        }
        hpow_abs = &hpow_abs * &habs;
        t += 1;
    }

    // evaluate y^{(j)}(z0+h) = sum_l d_{l+j} (l+1)...(l+j) h^l by Horner
    let n = d.len() - 1;
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        let mut acc = Complex::zero(bits);
        for l in (0..=n.saturating_sub(j)).rev() {
            let f = rising_u64(l, j);
            acc = &(&acc * h) + &d[l + j].mul_u64(f);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Transport the theta-vector `init` (computed at the first waypoint)
/// along the path; returns the theta-vector at the last waypoint.
pub fn continue_path(
    op: &HoloOperator,
    init: &[Complex],
    path: &ContinuationPath,
    ctx: &Ctx,
) -> Result<Vec<Complex>> {
    path.validate()?;
    let m = op.order();
    if m == 0 {
        // order zero: y = inhom / A_0(z) in closed form
        let target = path.waypoints.last().unwrap();
        let a0 = &Complex::from_real(op.alpha[0].clone())
            + &target.scale(&op.beta[0]);
        return Ok(vec![&Complex::from_real(op.inhom.clone()) / &a0]);
    }
    if init.len() != m {
        return Err(Error::InvalidInput(format!(
            "initial vector has {} components, operator order is {}",
            init.len(),
            m
        )));
    }
    let one = ctx.one();
    let mut current = path.waypoints[0].clone();
    let mut derivs = theta_to_derivs(init, &current, ctx);
    let min_step = Real::pow2(-(ctx.bits() as i32) / 2, 64);
    for target in &path.waypoints[1..] {
        loop {
            let to_go = target - &current;
            let remaining = to_go.abs();
            if remaining.is_zero() {
                break;
            }
            let d0 = current.abs();
            let d1 = (&current - &Complex::from_real(one.clone())).abs();
            let dist = if d0 < d1 { d0 } else { d1 };
            let max_step = dist.ldexp(-1);
            if max_step < min_step {
                return Err(Error::StepUnderflow(format!(
                    "{:?}",
                    current.to_f64_pair()
                )));
            }
            let next = if max_step >= remaining {
                target.clone()
            } else {
                let scale = &max_step / &remaining;
                &current + &to_go.scale(&scale)
            };
            let h = &next - &current;
            derivs = taylor_step(op, &current, &h, &derivs, ctx)?;
            current = next;
        }
    }
    Ok(derivs_to_theta(&derivs, &current, ctx))
}
