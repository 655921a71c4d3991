//! Classical comparison bounds in the unit-range normalization.
//!
//! Every bound here controls a one-sided deviation `ε√n` of a sum of `n`
//! variables in `[0, 1]` from its mean.

use std::fmt;
use std::str::FromStr;

use super::types::{neg_ratio, BoundValue, Sign};
use crate::error::{Error, Result};

/// Per-variable sub-Gaussian coefficient `c(p, s)` of a Bernoulli-type
/// variable with mean `p`, for deviations in direction `s`.
///
/// # Panics
///
/// If `p` lies outside `[0, 1]`.
pub fn c_of(p: f64, s: Sign) -> f64 {
    assert!((0.0..=1.0).contains(&p), "c_of: p = {p} outside [0, 1]");
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    if p == 0.5 {
        return 0.25;
    }
    let variance_side = match s {
        Sign::Plus => p < 0.5,
        Sign::Minus => p >= 0.5,
    };
    if variance_side {
        p * (1.0 - p)
    } else {
        // log((1-p)/p) written as ln_1p to stay accurate near p = 1/2
        (1.0 - 2.0 * p) / (2.0 * ((1.0 - 2.0 * p) / p).ln_1p())
    }
}

/// Bound built from the average of `c(E X_m, s)` over the sequence.
///
/// When every coefficient is zero the variables are deterministic and any
/// positive deviation is impossible: the bound is 0 (`log_rhs = -inf`) and
/// flagged `event_impossible`.
pub fn rs13_rhs(means: &[f64], epsilon: f64, s: Sign) -> Result<BoundValue> {
    if means.is_empty() {
        return Err(Error::usage("rs13 needs at least one mean"));
    }
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::domain(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    if let Some(bad) = means.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::domain(format!("mean {bad} outside [0, 1]")));
    }
    let c_mean = means.iter().map(|&p| c_of(p, s)).sum::<f64>() / means.len() as f64;
    if c_mean == 0.0 && epsilon > 0.0 {
        return Ok(BoundValue::from_log(f64::NEG_INFINITY).with_impossible(true));
    }
    Ok(BoundValue::from_log(neg_ratio(epsilon * epsilon, 2.0 * c_mean)))
}

/// Multiplicative Chernoff bound `(e^{-sδ} / (1-sδ)^{1-sδ})^{np}`.
pub fn chernoff_mult_rhs(np: f64, delta: f64, s: Sign) -> Result<BoundValue> {
    if !(np > 0.0 && np.is_finite()) {
        return Err(Error::domain(format!("np must be positive, got {np}")));
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::domain(format!("delta must be nonnegative, got {delta}")));
    }
    let sd = s.value() * delta;
    if sd >= 1.0 {
        return Err(Error::domain(format!("sδ = {sd} must be below 1")));
    }
    Ok(BoundValue::from_log(np * (-sd - (1.0 - sd) * (-sd).ln_1p())))
}

/// The same bound rewritten at `δ = ε/(√n p)`:
/// `e^{-s√n ε} (1 - sε/(√n p))^{-np + s√n ε}`.
pub fn chernoff_mult_equiv_rhs(n: u64, p: f64, epsilon: f64, s: Sign) -> Result<BoundValue> {
    if n == 0 {
        return Err(Error::usage("n must be a positive integer"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::domain(format!("p must lie in (0, 1], got {p}")));
    }
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::domain(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    let sqrt_n = (n as f64).sqrt();
    let sd = s.value() * epsilon / (sqrt_n * p);
    if sd >= 1.0 {
        return Err(Error::domain(format!("sε/(√n p) = {sd} must be below 1")));
    }
    let s_root = s.value() * sqrt_n * epsilon;
    Ok(BoundValue::from_log(-s_root + (s_root - n as f64 * p) * (-sd).ln_1p()))
}

/// Classical baselines selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Azuma,
    Hoeffding,
    Bernstein,
    Bennett,
}

impl BaselineKind {
    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::Azuma => "azuma",
            BaselineKind::Hoeffding => "hoeffding",
            BaselineKind::Bernstein => "bernstein",
            BaselineKind::Bennett => "bennett",
        }
    }

    pub fn needs_variance(self) -> bool {
        matches!(self, BaselineKind::Bernstein | BaselineKind::Bennett)
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaselineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "azuma" => Ok(BaselineKind::Azuma),
            "hoeffding" => Ok(BaselineKind::Hoeffding),
            "bernstein" => Ok(BaselineKind::Bernstein),
            "bennett" => Ok(BaselineKind::Bennett),
            other => Err(Error::usage(format!("unknown baseline {other:?}"))),
        }
    }
}

/// Bennett's `h(u) = (1+u)log(1+u) - u`, with a series near zero.
fn bennett_h(u: f64) -> f64 {
    if u.abs() < 1e-2 {
        // Σ_{k>=2} (-1)^k u^k / (k(k-1))
        let mut sum = 0.0;
        let mut pow = u * u;
        for k in 2..14 {
            let term = pow / (k * (k - 1)) as f64;
            sum += if k % 2 == 0 { term } else { -term };
            pow *= u;
        }
        sum
    } else {
        (1.0 + u) * u.ln_1p() - u
    }
}

/// Evaluates a classical baseline.
///
/// * Azuma–Hoeffding and Hoeffding: `exp(-2ε²)`.
/// * Bernstein: `exp(-ε² / (2(v + ε/(3√n))))` with per-step variance `v`.
/// * Bennett: `exp(-n v h(ε/(√n v)))`.
pub fn baseline_rhs(kind: BaselineKind, n: u64, epsilon: f64, variance: Option<f64>) -> Result<BoundValue> {
    if n == 0 {
        return Err(Error::usage("n must be a positive integer"));
    }
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::domain(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    let v = match (kind.needs_variance(), variance) {
        (true, None) => return Err(Error::usage(format!("{kind} needs a variance"))),
        (true, Some(v)) if !(v >= 0.0 && v.is_finite()) => {
            return Err(Error::domain(format!("variance must be nonnegative, got {v}")))
        }
        (_, v) => v.unwrap_or(0.0),
    };
    let sqrt_n = (n as f64).sqrt();
    let log_rhs = match kind {
        BaselineKind::Azuma | BaselineKind::Hoeffding => -2.0 * epsilon * epsilon,
        BaselineKind::Bernstein => neg_ratio(epsilon * epsilon, 2.0 * (v + epsilon / (3.0 * sqrt_n))),
        BaselineKind::Bennett => {
            if epsilon == 0.0 {
                0.0
            } else if v == 0.0 {
                f64::NEG_INFINITY
            } else {
                -(n as f64) * v * bennett_h(epsilon / (sqrt_n * v))
            }
        }
    };
    Ok(BoundValue::from_log(log_rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn c_of_cases() {
        assert_eq!(c_of(0.5, Sign::Plus), 0.25);
        assert_eq!(c_of(0.5, Sign::Minus), 0.25);
        assert_eq!(c_of(0.0, Sign::Plus), 0.0);
        assert_eq!(c_of(1.0, Sign::Minus), 0.0);
        // mpmath: (1 - 1.5)/(2 log(1/3))
        assert_relative_eq!(c_of(0.75, Sign::Plus), 0.22755980665670935, max_relative = 1e-14);
        assert_eq!(c_of(0.75, Sign::Minus), 0.1875);
        assert_eq!(c_of(0.25, Sign::Plus), 0.1875);
        assert_relative_eq!(c_of(0.25, Sign::Minus), 0.22755980665670935, max_relative = 1e-14);
    }

    #[test]
    fn c_of_is_continuous_at_one_half() {
        for s in [Sign::Plus, Sign::Minus] {
            for p in [0.5 - 1e-6, 0.5 + 1e-6] {
                assert!((c_of(p, s) - 0.25).abs() <= 1e-5);
            }
        }
    }

    #[test]
    #[should_panic]
    fn c_of_rejects_out_of_range() {
        c_of(1.5, Sign::Plus);
    }

    #[test]
    fn rs13_examples() {
        let r = rs13_rhs(&[0.75; 10], 1.0, Sign::Plus).unwrap();
        assert_relative_eq!(r.rhs, 1.0 / 9.0, max_relative = 1e-14);
        let r = rs13_rhs(&[0.3, 0.7], 0.0, Sign::Minus).unwrap();
        assert_eq!(r.rhs, 1.0);
        assert!(r.vacuous);
        for s in [Sign::Plus, Sign::Minus] {
            let r = rs13_rhs(&[0.5; 3], 1.0, s).unwrap();
            assert_relative_eq!(r.rhs, (-2.0f64).exp(), max_relative = 1e-15);
        }
        let r = rs13_rhs(&[0.0, 1.0], 1.0, Sign::Plus).unwrap();
        assert_eq!(r.rhs, 0.0);
        assert!(r.event_impossible && !r.vacuous);
        assert!(rs13_rhs(&[], 1.0, Sign::Plus).is_err());
        assert!(rs13_rhs(&[1.2], 1.0, Sign::Plus).is_err());
    }

    #[test]
    fn chernoff_examples() {
        let r = chernoff_mult_rhs(100.0, 0.1, Sign::Plus).unwrap();
        assert_relative_eq!(r.rhs, 0.59597676904096933, max_relative = 1e-13);
        let r = chernoff_mult_rhs(100.0, 1e-12, Sign::Plus).unwrap();
        assert!((r.rhs - 1.0).abs() < 1e-18 + 1e-15);
        assert!(chernoff_mult_rhs(100.0, 1.0, Sign::Plus).is_err());
        assert!(chernoff_mult_rhs(100.0, 1.0, Sign::Minus).is_ok());
        assert!(chernoff_mult_rhs(0.0, 0.5, Sign::Plus).is_err());
    }

    #[test]
    fn chernoff_equivalent_form_agrees() {
        for &(n, p, eps) in &[(100u64, 0.3, 1.0), (10_000, 0.95, 2.0), (50, 0.5, 0.3)] {
            for s in [Sign::Plus, Sign::Minus] {
                let delta = eps / ((n as f64).sqrt() * p);
                let a = chernoff_mult_rhs(n as f64 * p, delta, s).unwrap();
                let b = chernoff_mult_equiv_rhs(n, p, eps, s).unwrap();
                assert_relative_eq!(a.rhs, b.rhs, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn baselines() {
        let r = baseline_rhs(BaselineKind::Azuma, 10, 1.0, None).unwrap();
        assert_relative_eq!(r.rhs, 0.1353352832366127, max_relative = 1e-15);
        let r = baseline_rhs(BaselineKind::Hoeffding, 10, 1.0, None).unwrap();
        assert_relative_eq!(r.rhs, 0.1353352832366127, max_relative = 1e-15);

        let r = baseline_rhs(BaselineKind::Bernstein, 1 << 62, 1.0, Some(0.25)).unwrap();
        assert_relative_eq!(r.rhs, (-2.0f64).exp(), max_relative = 1e-8);
        let r = baseline_rhs(BaselineKind::Bernstein, 10_000, 1.0, Some(0.0475)).unwrap();
        assert_relative_eq!(r.rhs, 5.3487339668829983e-5, max_relative = 1e-12);

        assert!(matches!(
            baseline_rhs(BaselineKind::Bennett, 10, 1.0, None),
            Err(Error::Usage(_))
        ));
        let r = baseline_rhs(BaselineKind::Bennett, 10, 1.0, Some(0.0)).unwrap();
        assert_eq!(r.rhs, 0.0);
    }

    #[test]
    fn bennett_matches_direct_formula() {
        // independent evaluation: h(u) = (1+u)ln(1+u) - u in plain form
        for &(n, v, eps) in &[(100u64, 0.25, 1.0), (10_000, 0.0475, 1.0), (7, 0.1, 0.4)] {
            let u: f64 = eps / ((n as f64).sqrt() * v);
            let expect = -(n as f64) * v * ((1.0 + u) * (1.0 + u).ln() - u);
            let r = baseline_rhs(BaselineKind::Bennett, n, eps, Some(v)).unwrap();
            assert_relative_eq!(r.log_rhs, expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn bennett_series_is_continuous() {
        for u in [0.0099999, 0.0100001, 0.005, -0.005] {
            let direct = (1.0 + u) * f64::ln_1p(u) - u;
            assert_relative_eq!(bennett_h(u), direct, max_relative = 1e-10);
        }
    }

    #[test]
    fn bennett_beats_bernstein_beats_hoeffding() {
        let v = 0.0475;
        let ber = baseline_rhs(BaselineKind::Bernstein, 10_000, 1.0, Some(v)).unwrap();
        let ben = baseline_rhs(BaselineKind::Bennett, 10_000, 1.0, Some(v)).unwrap();
        let hoe = baseline_rhs(BaselineKind::Hoeffding, 10_000, 1.0, None).unwrap();
        assert!(ben.rhs <= ber.rhs && ber.rhs <= hoe.rhs);
    }
}
