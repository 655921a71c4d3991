//! The one-step moment bound behind the Chernoff chain.
//!
//! For a `[0, 1]` variable with conditional mean `p`, convexity of
//! `x ↦ e^{-xλα}` bounds `E e^{λ(p - αX)}` by `p e^{λ(p-α)} + (1-p) e^{λp}`.
//! Maximizing over `p ∈ ℝ` gives `((1 - e^{-λα})/λ) e^{λ/(1-e^{-λα}) - 1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::ser_f64;

/// Both sides of the one-step inequality at `(λ, α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChernoffStep {
    /// Unconstrained maximizer `1/(1 - e^{-λα}) - 1/λ`.
    #[serde(serialize_with = "ser_f64")]
    pub p_star: f64,
    pub interior: bool,
    /// `max_{p ∈ [0,1]} p e^{λ(p-α)} + (1-p) e^{λp}`.
    #[serde(serialize_with = "ser_f64")]
    pub lhs: f64,
    #[serde(serialize_with = "ser_f64")]
    pub rhs: f64,
    #[serde(serialize_with = "ser_f64")]
    pub gap: f64,
}

/// `p e^{λ(p-α)} + (1-p) e^{λp}` written as `e^{λp}(1 - p(1 - e^{-λα}))`.
pub fn step_moment(p: f64, lambda: f64, alpha: f64) -> f64 {
    let c = -(-lambda * alpha).exp_m1();
    (lambda * p).exp() * (1.0 - p * c)
}

pub fn chernoff_step(lambda: f64, alpha: f64) -> Result<ChernoffStep> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::domain(format!("lambda must be positive, got {lambda}")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain(format!("alpha must be positive, got {alpha}")));
    }
    let c = -(-lambda * alpha).exp_m1();
    let p_star = 1.0 / c - 1.0 / lambda;
    let interior = (0.0..=1.0).contains(&p_star);
    let lhs = step_moment(p_star.clamp(0.0, 1.0), lambda, alpha);
    let rhs = c / lambda * (lambda / c - 1.0).exp();
    Ok(ChernoffStep {
        p_star,
        interior,
        lhs,
        rhs,
        gap: rhs - lhs,
    })
}

/// `RHS - LHS` of the one-step inequality; never negative.
pub fn chernoff_step_gap(lambda: f64, alpha: f64) -> Result<f64> {
    chernoff_step(lambda, alpha).map(|s| s.gap)
}

/// Maximum of the step moment over the grid `p = k·resolution` in `[0, 1]`.
pub fn scan_max_moment(lambda: f64, alpha: f64, resolution: f64) -> f64 {
    let steps = (1.0 / resolution).round() as u64;
    (0..=steps)
        .map(|k| step_moment(k as f64 / steps as f64, lambda, alpha))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tight_at_interior_optimum() {
        let s = chernoff_step(1.0, 1.0).unwrap();
        assert!(s.interior);
        assert_relative_eq!(s.p_star, 0.58197670686932642, max_relative = 1e-14);
        assert!(s.gap.abs() < 1e-9);
    }

    #[test]
    fn clipped_optimum() {
        let s = chernoff_step(5.0, 0.2).unwrap();
        assert!(!s.interior && s.p_star > 1.0);
        assert_relative_eq!(s.lhs, 4f64.exp(), max_relative = 1e-14);
        assert_relative_eq!(s.rhs, 126.69346108017267, max_relative = 1e-13);
        assert_relative_eq!(s.gap, 72.095311047028427, max_relative = 1e-13);
    }

    #[test]
    fn small_lambda_limit() {
        let gap = chernoff_step_gap(1e-9, 0.5).unwrap();
        assert!((gap - (0.5 * std::f64::consts::E - 1.0)).abs() < 1e-6);
    }

    #[test]
    fn scan_never_beats_closed_form() {
        for &(l, a) in &[(1.0, 1.0), (5.0, 0.2), (0.3, 1.7), (2.5, 0.05)] {
            let s = chernoff_step(l, a).unwrap();
            let scan = scan_max_moment(l, a, 1e-4);
            assert!(scan <= s.lhs * (1.0 + 1e-12));
            assert!(scan >= s.lhs * (1.0 - 1e-6));
        }
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(chernoff_step(0.0, 1.0).is_err());
        assert!(chernoff_step(1.0, -1.0).is_err());
    }
}
