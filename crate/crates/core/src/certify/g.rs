use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::ser_f64;

/// Below this `z` the series for `z/(1-e^{-z})` replaces the closed form.
pub const SERIES_CUTOFF: f64 = 1e-4;

/// A point `(x, y, z)` of the exponent-gap function, with `x = b/√n`,
/// `y = a/√n` and `z = λα`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GPoint {
    #[serde(serialize_with = "ser_f64")]
    pub x: f64,
    #[serde(serialize_with = "ser_f64")]
    pub y: f64,
    #[serde(serialize_with = "ser_f64")]
    pub z: f64,
}

impl GPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(y > -0.5) || !y.is_finite() {
            return Err(Error::domain(format!("y = {y} must exceed -1/2")));
        }
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::domain(format!("x = {x} must be nonnegative")));
        }
        if !(z >= 0.0) || !z.is_finite() {
            return Err(Error::domain(format!("z = {z} must be nonnegative")));
        }
        Ok(Self { x, y, z })
    }

    /// `α = 1 + 2y`.
    pub fn alpha(&self) -> f64 {
        1.0 + 2.0 * self.y
    }

    /// `β/n = x - y`.
    pub fn beta_over_n(&self) -> f64 {
        self.x - self.y
    }

    /// `λ = z/α`.
    pub fn lambda(&self) -> f64 {
        self.z / self.alpha()
    }

    /// `w = 18x(2y+1)/(4y+3)²`.
    pub fn w(&self) -> f64 {
        curve_w(self.x, self.y)
    }
}

pub(crate) fn curve_w(x: f64, y: f64) -> f64 {
    let d = 4.0 * y + 3.0;
    18.0 * x * (2.0 * y + 1.0) / (d * d)
}

/// `z` on the stationary curve, `36x(2y+1)/(4y+3)²`.
pub fn curve_z(x: f64, y: f64) -> f64 {
    2.0 * curve_w(x, y)
}

/// `z/(1 - e^{-z})`, equal to 1 at `z = 0`.
pub fn phi(z: f64) -> f64 {
    if z.abs() < SERIES_CUTOFF {
        let z2 = z * z;
        1.0 + z / 2.0 + z2 / 12.0 - z2 * z2 / 720.0
    } else {
        z / -(-z).exp_m1()
    }
}

/// `log(z/(1 - e^{-z}))`.
fn log_phi(z: f64) -> f64 {
    if z.abs() < SERIES_CUTOFF {
        (phi(z) - 1.0).ln_1p()
    } else if z > 1.0 {
        z.ln() - (-(-z).exp()).ln_1p()
    } else {
        phi(z).ln()
    }
}

/// The exponent gap `G(x, y, z)` between the claimed bound and the Chernoff
/// estimate at `z = λα`, per unit `n`.
///
/// ```text
/// G = -18(x²-y²)/(4y+3)² + 1 + (x-y)z/(2y+1)
///     - z/((1-e^{-z})(2y+1)) - log((1-e^{-z})(2y+1)/z)
/// ```
///
/// At `z = 0` the expression takes its limit value; near zero a series is used.
pub fn g_value(p: &GPoint) -> f64 {
    let d = 4.0 * p.y + 3.0;
    let alpha = p.alpha();
    -18.0 * (p.x * p.x - p.y * p.y) / (d * d) + 1.0 + (p.x - p.y) * p.z / alpha - phi(p.z) / alpha - alpha.ln()
        + log_phi(p.z)
}

/// `(∂G/∂x, ∂²G/∂x²)`.
pub fn g_derivs(p: &GPoint) -> (f64, f64) {
    let d2 = (4.0 * p.y + 3.0).powi(2);
    (-36.0 * p.x / d2 + p.z / p.alpha(), -36.0 / d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gp(x: f64, y: f64, z: f64) -> GPoint {
        GPoint::new(x, y, z).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(g_value(&gp(0.0, 0.0, 0.0)), 0.0);
        // mpmath, 40 digits
        assert_relative_eq!(g_value(&gp(0.5, 0.0, 2.0)), 0.025525352929473063, max_relative = 1e-12);
        assert_relative_eq!(g_value(&gp(0.5, 0.0, 0.0)), -0.5, max_relative = 1e-15);
        assert_relative_eq!(g_value(&gp(1.0, 0.0, 4.0)), 0.33015036649068099, max_relative = 1e-13);
    }

    #[test]
    fn derivative_examples() {
        let (d1, d2) = g_derivs(&gp(0.5, 0.0, 2.0));
        assert!(d1.abs() < 1e-15);
        assert_eq!(d2, -4.0);
        assert_eq!(g_derivs(&gp(3.0, 0.0, 0.7)).1, -4.0);

        let h = 1e-5;
        let fd = (g_value(&gp(0.5 + h, 0.0, 2.0)) - g_value(&gp(0.5 - h, 0.0, 2.0))) / (2.0 * h);
        assert!((fd - d1).abs() < 1e-6);
    }

    #[test]
    fn continuous_across_series_cutoff() {
        for &(x, y) in &[(0.3, 0.1), (1.0, -0.3), (2.0, 1.5)] {
            let g0 = g_value(&gp(x, y, 0.0));
            assert!((g_value(&gp(x, y, 1e-8)) - g0).abs() <= 1e-6);
            let below = g_value(&gp(x, y, SERIES_CUTOFF * (1.0 - 1e-9)));
            let above = g_value(&gp(x, y, SERIES_CUTOFF * (1.0 + 1e-9)));
            // the two points are 2e-13 apart in z and |∂G/∂z| is O(1)
            assert!((below - above).abs() < 2e-12);
        }
    }

    #[test]
    fn phi_branches_agree() {
        for z in [SERIES_CUTOFF * 0.999, SERIES_CUTOFF * 1.001] {
            assert_relative_eq!(phi(z), z / (1.0 - (-z).exp()), max_relative = 1e-11);
        }
        assert_relative_eq!(log_phi(30.0), 30f64.ln(), max_relative = 1e-12);
        assert_relative_eq!(log_phi(0.5), phi(0.5).ln(), max_relative = 1e-15);
    }

    #[test]
    fn accessors() {
        let p = gp(0.75, 0.25, 3.0);
        assert_eq!(p.alpha(), 1.5);
        assert_eq!(p.beta_over_n(), 0.5);
        assert_eq!(p.lambda(), 2.0);
        assert_relative_eq!(p.w(), 18.0 * 0.75 * 1.5 / 16.0, max_relative = 1e-15);
        assert!(GPoint::new(0.1, -0.5, 0.0).is_err());
        assert!(GPoint::new(0.1, 0.0, -1.0).is_err());
    }
}
