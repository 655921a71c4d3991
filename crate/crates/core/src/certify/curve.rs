//! Growth of `G` along the stationary curve `z = 36x(2y+1)/(4y+3)²`.
//!
//! With `w = 18x(2y+1)/(4y+3)²` the total derivative splits into
//!
//! ```text
//! f1(w)·6(2y+1)/((4y+3)² sinh w) + f2(w)·3/((4y+3)² sinh² w) + 8wy²/((2y+1)(4y+3)²)
//! f1(w) = (3/w + w) sinh w - 3 cosh w
//! f2(w) = 4w + 2w cosh 2w - 3 sinh 2w
//! ```
//!
//! and both `f1` and `f2` have only positive Taylor coefficients.

use serde::Serialize;

use super::g::curve_w;
use crate::fmt::ser_f64;

/// Below this `w` the positive Taylor series are used instead of the
/// closed forms, which cancel catastrophically near zero.
const SERIES_BELOW: f64 = 1.0;

/// `f1` as written, `(3/w + w) sinh w - 3 cosh w`.
pub fn f1_direct(w: f64) -> f64 {
    (3.0 / w + w) * w.sinh() - 3.0 * w.cosh()
}

/// `f2` as written, `4w + 2w cosh 2w - 3 sinh 2w`.
pub fn f2_direct(w: f64) -> f64 {
    4.0 * w + 2.0 * w * (2.0 * w).cosh() - 3.0 * (2.0 * w).sinh()
}

/// `Σ_{k=2}^{terms} 4k(k-1)/(2k+1)! · w^{2k}`.
pub fn f1_series(w: f64, terms: u32) -> f64 {
    // running value of w^{2k}/(2k+1)!
    let mut scaled = w.powi(4) / 120.0;
    let mut sum = 0.0;
    for k in 2..=terms {
        let kf = k as f64;
        sum += 4.0 * kf * (kf - 1.0) * scaled;
        scaled *= w * w / ((2.0 * kf + 2.0) * (2.0 * kf + 3.0));
    }
    sum
}

/// `Σ_{k=2}^{terms} 4^{k+1}(k-1)/(2k+1)! · w^{2k+1}`.
pub fn f2_series(w: f64, terms: u32) -> f64 {
    // running value of (2w)^{2k}/(2k+1)!, so each term is 4w(k-1) times it
    let tw = 2.0 * w;
    let mut scaled = tw.powi(4) / 120.0;
    let mut sum = 0.0;
    for k in 2..=terms {
        let kf = k as f64;
        sum += 4.0 * w * (kf - 1.0) * scaled;
        scaled *= tw * tw / ((2.0 * kf + 2.0) * (2.0 * kf + 3.0));
    }
    sum
}

/// Direct and series values of `f1`, `f2` at one `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TaylorCheck {
    #[serde(serialize_with = "ser_f64")]
    pub f1: f64,
    #[serde(serialize_with = "ser_f64")]
    pub f2: f64,
    #[serde(serialize_with = "ser_f64")]
    pub f1_series: f64,
    #[serde(serialize_with = "ser_f64")]
    pub f2_series: f64,
}

pub fn taylor_check(w: f64, terms: u32) -> TaylorCheck {
    TaylorCheck {
        f1: f1_direct(w),
        f2: f2_direct(w),
        f1_series: f1_series(w, terms),
        f2_series: f2_series(w, terms),
    }
}

/// `f1(w)/sinh w`, stable for all `w >= 0`.
fn f1_over_sinh(w: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else if w < SERIES_BELOW {
        f1_series(w, 30) / w.sinh()
    } else {
        3.0 / w + w - 3.0 / w.tanh()
    }
}

/// `f2(w)/sinh² w`, stable for all `w >= 0`.
fn f2_over_sinh2(w: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else if w < SERIES_BELOW {
        f2_series(w, 30) / w.sinh().powi(2)
    } else {
        // cosh 2w = 1 + 2 sinh² w and sinh 2w = 2 sinh w cosh w
        6.0 * w / w.sinh().powi(2) + 4.0 * w - 6.0 / w.tanh()
    }
}

/// Total derivative of `x ↦ G(x, y, 36x(2y+1)/(4y+3)²)`.
pub fn grad_along_curve(x: f64, y: f64) -> f64 {
    let w = curve_w(x, y);
    let alpha = 2.0 * y + 1.0;
    let d2 = (4.0 * y + 3.0).powi(2);
    f1_over_sinh(w) * 6.0 * alpha / d2 + f2_over_sinh2(w) * 3.0 / d2 + 8.0 * w * y * y / (alpha * d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::g::{curve_z, g_value, GPoint};
    use approx::assert_relative_eq;

    fn along(x: f64, y: f64) -> f64 {
        g_value(&GPoint::new(x, y, curve_z(x, y)).unwrap())
    }

    #[test]
    fn examples() {
        // mpmath total derivative of G(x, 0, 4x) at x = 0.5
        assert_relative_eq!(grad_along_curve(0.5, 0.0), 0.19598217993529572, max_relative = 1e-13);
        assert_eq!(grad_along_curve(0.0, 0.7), 0.0);
        assert_eq!(grad_along_curve(0.0, -0.3), 0.0);
        let g = grad_along_curve(1.0, 0.0);
        assert!(g > 0.0);
        let h = 1e-5;
        let fd = (along(1.0 + h, 0.0) - along(1.0 - h, 0.0)) / (2.0 * h);
        assert!((g - fd).abs() < 1e-6);
    }

    #[test]
    fn matches_high_precision_values() {
        for &(x, y, want) in &[
            (1.0, 0.0, 1.1548284364420920),
            (0.7, 0.3, 0.19125655861175006),
            (0.9, -0.3, 3.8877947258754159),
            (2.0, 1.5, 0.26026659542030355),
        ] {
            assert_relative_eq!(grad_along_curve(x, y), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn stable_forms_agree_with_direct_ones_near_switch() {
        for w in [0.999_999, 1.000_001, 1.5, 4.0] {
            assert_relative_eq!(f1_over_sinh(w), f1_direct(w) / w.sinh(), max_relative = 1e-11);
            assert_relative_eq!(f2_over_sinh2(w), f2_direct(w) / w.sinh().powi(2), max_relative = 1e-11);
        }
        // large w would overflow sinh in the direct form
        assert!(grad_along_curve(400.0, 0.0).is_finite());
    }

    #[test]
    fn taylor_examples() {
        let t = taylor_check(1.0, 40);
        assert_relative_eq!(t.f1, 0.071562870129474492, max_relative = 1e-12);
        assert_relative_eq!(t.f2, 0.64381015862620662, max_relative = 1e-12);
        assert!((t.f1 - t.f1_series).abs() <= 1e-10);
        assert!((t.f2 - t.f2_series).abs() <= 1e-10);
        let t = taylor_check(0.01, 40);
        assert!(t.f1 > 0.0 && t.f2 > 0.0);
        assert!(t.f1_series > 0.0 && t.f2_series > 0.0);
    }
}
