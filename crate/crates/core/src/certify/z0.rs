//! The diagonal root `z₀(y)` with `G(|y|, y, z₀(y)) = 0`, and the region split
//! it induces.

use serde::Serialize;

use super::g::{curve_z, SERIES_CUTOFF};
use crate::error::{Error, Result};
use crate::root::{bisect, expand_upper, Monotone};

/// `y = z/(2(1 - e^{-z})) - 1/2`, the branch used for `y > 0`.
pub fn y_plus(z: f64) -> f64 {
    0.5 * super::g::phi(z) - 0.5
}

/// `y = -1/2 + z/(2(e^z - 1))`, the branch used for `y < 0`.
pub fn y_minus(z: f64) -> f64 {
    let ratio = if z.abs() < SERIES_CUTOFF {
        let z2 = z * z;
        1.0 - z / 2.0 + z2 / 12.0 - z2 * z2 / 720.0
    } else {
        z / z.exp_m1()
    };
    -0.5 + 0.5 * ratio
}

/// The closed-form branch selected by the sign of `y`, evaluated at `z`.
pub fn closed_form(y: f64, z: f64) -> f64 {
    if y > 0.0 {
        y_plus(z)
    } else if y < 0.0 {
        y_minus(z)
    } else {
        0.0
    }
}

/// Canonical root `z₀(y) >= 0`.
///
/// `z₀(0) = 0`; for `y > 0` it inverts [`y_plus`], for `y < 0` it inverts
/// [`y_minus`]. Both maps are monotone on `z > 0`, so the root is bracketed
/// by doubling and refined by bisection to floating-point resolution.
pub fn z0_solve(y: f64) -> Result<f64> {
    if !(y > -0.5) || !y.is_finite() {
        return Err(Error::domain(format!("z0 is defined for y > -1/2, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let (f, dir): (fn(f64) -> f64, Monotone) = if y > 0.0 {
        (y_plus, Monotone::Increasing)
    } else {
        (y_minus, Monotone::Decreasing)
    };
    let hi =
        expand_upper(f, y, 1.0, 1e300, dir).ok_or_else(|| Error::domain(format!("no bracket for z0 at y = {y}")))?;
    Ok(bisect(f, y, 0.0, hi, dir, 0.0))
}

/// The two pieces of the domain `{x > |y|, y > -1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionTag {
    /// `x <= (4y+3)² z₀(y) / (36(2y+1))`: the diagonal root is used.
    RegionI,
    /// Past that boundary: the stationary-curve value is used.
    RegionII,
}

/// Boundary `x*(y) = (4y+3)² z₀(y) / (36(2y+1))` between the two regions.
pub fn region_boundary(y: f64, z0: f64) -> f64 {
    (4.0 * y + 3.0).powi(2) * z0 / (36.0 * (2.0 * y + 1.0))
}

/// Region of `(x, y)` and the `z₁` used there.
pub fn z1_region(x: f64, y: f64) -> Result<(RegionTag, f64)> {
    let z0 = z0_solve(y)?;
    z1_region_with(x, y, z0)
}

/// As [`z1_region`] with a precomputed `z₀(y)`.
pub fn z1_region_with(x: f64, y: f64, z0: f64) -> Result<(RegionTag, f64)> {
    if !(x > y.abs()) {
        return Err(Error::domain(format!("need x > |y|, got x = {x}, y = {y}")));
    }
    if x <= region_boundary(y, z0) {
        Ok((RegionTag::RegionI, z0))
    } else {
        Ok((RegionTag::RegionII, curve_z(x, y)))
    }
}
