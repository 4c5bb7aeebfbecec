//! Continuation paths in the z-plane.
//!
//! Paths are ordered waypoints; the stepper subdivides each segment with
//! steps of at most half the distance to the nearest finite singularity
//! in {0, 1}. A path may end on the cut [1, oo) (boundary value from the
//! chosen side) but must never cross it in its interior.

use crate::error::{Error, Result};
use crate::numerics::{Complex, Ctx, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutSide {
    Above,
    Below,
}

#[derive(Clone, Debug)]
pub struct ContinuationPath {
    pub waypoints: Vec<Complex>,
}

impl ContinuationPath {
    /// Straight segment from `from` to `to`.
    pub fn straight(from: Complex, to: Complex) -> Self {
        ContinuationPath { waypoints: vec![from, to] }
    }

    /// Path from a real base point 0 < from < 1/2 to a real target t > 1,
    /// passing above or below the cut.
    pub fn around_cut(from: Complex, target: &Real, side: CutSide, ctx: &Ctx) -> Self {
        let sigma = match side {
            CutSide::Above => ctx.one(),
            CutSide::Below => -ctx.one(),
        };
        // corner height, then a ridge at height max(2, t/2) over the cut
        let ridge = {
            let half_t = target.ldexp(-1);
            let two = ctx.real_u64(2);
            if half_t > two {
                half_t
            } else {
                two
            }
        };
        let corner = ctx.real_f64(0.55);
        let zero = ctx.zero();
        ContinuationPath {
            waypoints: vec![
                from,
                Complex::new(zero.clone(), &corner * &sigma),
                Complex::new(zero, &ridge * &sigma),
                Complex::new(target.clone(), &ridge * &sigma),
                Complex::new(target.clone(), ctx.zero()),
            ],
        }
    }

    /// Interior crossings of the cut [1, oo) are forbidden; the endpoints
    /// of the whole path may lie on it.
    pub fn validate(&self) -> Result<()> {
        if self.waypoints.len() < 2 {
            return Err(Error::InvalidInput("path needs at least two waypoints".into()));
        }
        for w in &self.waypoints {
            let (re, im) = w.to_f64_pair();
            let d0 = (re * re + im * im).sqrt();
            let d1 = ((re - 1.0) * (re - 1.0) + im * im).sqrt();
            if d0 < 1e-12 || d1 < 1e-12 {
                return Err(Error::InvalidInput(
                    "waypoint coincides with a singular point".into(),
                ));
            }
        }
        for (k, pair) in self.waypoints.windows(2).enumerate() {
            let (ar, ai) = pair[0].to_f64_pair();
            let (br, bi) = pair[1].to_f64_pair();
            // strictly crossing the real axis?
            if ai * bi < 0.0 {
                let t = ai / (ai - bi);
                let xre = ar + t * (br - ar);
                if xre >= 1.0 - 1e-9 {
                    return Err(Error::InvalidInput(format!(
                        "segment {} crosses the cut at re = {:.4}",
                        k, xre
                    )));
                }
            }
            // sliding along the axis towards/through 1 with im == 0
            if ai == 0.0 && bi == 0.0 {
                let lo = ar.min(br);
                let hi = ar.max(br);
                if hi >= 1.0 - 1e-9 && lo <= 1.0 + 1e-9 {
                    return Err(Error::InvalidInput(
                        "real segment passes through z = 1".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}
