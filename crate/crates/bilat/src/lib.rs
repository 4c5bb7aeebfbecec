//! Bilateral sums attached to Ramanujan-like series for 1/pi^2.
//!
//! The crate evaluates and verifies the series catalog at arbitrary
//! precision, analytically continues the divergent sides of bilateral
//! sums, identifies terminating Fourier coefficients as exact rationals,
//! computes mirror-map and tau invariants, derives new series from limits
//! of the bilateral identity, and checks supercongruences in exact
//! arithmetic.

pub mod error;
pub mod catalog;
pub mod numerics;
pub mod relations;

pub use error::{Error, Result};
pub use numerics::{Complex, Ctx, QuadElem, Rational, Real};
