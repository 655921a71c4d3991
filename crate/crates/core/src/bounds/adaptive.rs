//! Bounds whose deviation threshold is affine in the observed sum.
//!
//! For `0 <= X_m <= 1` adapted to a filtration, with `D = Σ (E(X_m|past) - X_m)`
//! and `Δ = 1 - 2S/n`, the base inequality reads
//!
//! ```text
//! P( D >= (b - aΔ)√n ) <= exp( -2(b² - a²) / (1 + 4a/(3√n))² )
//! ```
//!
//! The corollary forms reparameterize `(a, b)` through a guess `δ` of the
//! bias statistic. The guess only moves the threshold; the bound stays valid
//! whether or not the guess is right.

use super::types::{
    neg_ratio, BiasStatistic, BoundValue, CorollaryQuery, MeanKnownQuery, Sign, TheoremQuery, ThresholdSpec,
};
use crate::error::{Error, Result};

/// Right-hand side of the base inequality.
///
/// Vacuous whenever `b <= |a|`. For `a <= -√n/2` and `b > -a` the event is
/// empty, which is reported through `event_impossible`.
pub fn theorem1_rhs(q: &TheoremQuery) -> Result<BoundValue> {
    let sqrt_n = q.sqrt_n();
    let denom = 1.0 + 4.0 * q.a / (3.0 * sqrt_n);
    if denom == 0.0 {
        return Err(Error::domain(format!(
            "singular parameterization: 1 + 4a/(3√n) = 0 at a = {}, n = {}",
            q.a, q.n
        )));
    }
    let log_rhs = -2.0 * (q.b * q.b - q.a * q.a) / (denom * denom);
    let impossible = q.a <= -0.5 * sqrt_n && q.b > -q.a;
    Ok(BoundValue::from_log(log_rhs).with_impossible(impossible))
}

/// Threshold `(b + a(2S/n - 1))√n = (b - aΔ)√n` of the base inequality.
pub fn theorem1_threshold(q: &TheoremQuery) -> ThresholdSpec {
    ThresholdSpec::new(q.b, -q.a, q.n, Sign::Plus)
}

/// A threshold realized at one value of the bias statistic, with its bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluated {
    pub threshold: f64,
    pub bound: BoundValue,
}

fn cor1_denominator(q: &CorollaryQuery) -> Result<(f64, f64)> {
    let shifted = q.shifted_delta();
    let denom = 1.0 - q.delta * shifted;
    if denom <= 0.0 || denom.is_nan() {
        return Err(Error::domain(format!(
            "validity predicate 1 - δ(δ - 4sε/(3√n)) > 0 fails: value {denom} at δ = {}, ε = {}, n = {}",
            q.delta, q.epsilon, q.n
        )));
    }
    Ok((shifted, denom))
}

/// Threshold of the single-sequence corollary as an affine function of `Δ`.
pub fn cor1_threshold(q: &CorollaryQuery) -> Result<ThresholdSpec> {
    let (shifted, denom) = cor1_denominator(q)?;
    Ok(ThresholdSpec::new(
        q.epsilon / denom,
        -q.epsilon * shifted / denom,
        q.n,
        q.sign,
    ))
}

/// Bound of the single-sequence corollary, independent of `Δ`.
pub fn cor1_bound(q: &CorollaryQuery) -> Result<BoundValue> {
    let (shifted, _) = cor1_denominator(q)?;
    Ok(BoundValue::from_log(neg_ratio(
        2.0 * q.epsilon * q.epsilon,
        1.0 - shifted * shifted,
    )))
}

/// Evaluates the single-sequence corollary at an observed bias `Δ`.
pub fn cor1_eval(q: &CorollaryQuery, bias: f64) -> Result<Evaluated> {
    let threshold = cor1_threshold(q)?.at_delta(bias);
    Ok(Evaluated {
        threshold,
        bound: cor1_bound(q)?,
    })
}

/// Maps a corollary query onto the `(a, b)` of the base inequality.
///
/// For `s = -1` the map goes through `X -> 1 - X`, `δ -> -δ`: the returned
/// query bounds the complemented sequence, whose `D` and `Δ` are the
/// negations of the original ones.
pub fn cor1_to_theorem1(q: &CorollaryQuery) -> Result<TheoremQuery> {
    let plus = match q.sign {
        Sign::Plus => *q,
        Sign::Minus => CorollaryQuery {
            delta: -q.delta,
            sign: Sign::Plus,
            ..*q
        },
    };
    let (shifted, denom) = cor1_denominator(&plus)?;
    TheoremQuery::new(q.n, q.epsilon * shifted / denom, q.epsilon / denom)
}

/// Result of the martingale corollary at an observed mean bias `Δ'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MartingaleEvaluated {
    /// `None` when the denominator `1 - δ'(δ' + 2sε/(3√n))` vanishes or is
    /// negative; this only happens in the vacuous regime.
    pub threshold: Option<f64>,
    pub bound: BoundValue,
    pub event_impossible: bool,
}

/// Threshold of the martingale corollary as an affine function of `Δ'`.
///
/// The event is `s(Y_0 - Y_n) >= threshold(Δ')`.
pub fn cor2_threshold(q: &CorollaryQuery) -> Result<ThresholdSpec> {
    let shifted = q.shifted_delta_martingale();
    let denom = 1.0 - q.delta * shifted;
    if denom <= 0.0 || denom.is_nan() {
        return Err(Error::domain(format!(
            "1 - δ'(δ' + 2sε/(3√n)) = {denom} is not positive at δ' = {}, ε = {}, n = {}",
            q.delta, q.epsilon, q.n
        )));
    }
    Ok(
        ThresholdSpec::new(q.epsilon / denom, -q.epsilon * shifted / denom, q.n, q.sign)
            .with_statistic(BiasStatistic::Predicted),
    )
}

/// Evaluates the martingale corollary, covering its two degenerate cases.
pub fn cor2_eval(q: &CorollaryQuery, bias_mean: f64) -> Result<MartingaleEvaluated> {
    let shifted = q.shifted_delta_martingale();
    let denom = 1.0 - q.delta * shifted;
    let bound = BoundValue::from_log(neg_ratio(2.0 * q.epsilon * q.epsilon, 1.0 - shifted * shifted));
    let threshold = cor2_threshold(q).ok().map(|t| t.at_delta(bias_mean));

    if shifted * shifted >= 1.0 {
        return Ok(MartingaleEvaluated {
            threshold,
            bound,
            event_impossible: false,
        });
    }
    if threshold.is_none() {
        return Err(Error::domain(format!(
            "1 - δ'(δ' + 2sε/(3√n)) = {denom} is not positive at δ' = {}, ε = {}, n = {}",
            q.delta, q.epsilon, q.n
        )));
    }
    let impossible = shifted / denom * 2.0 * q.epsilon / q.sqrt_n() >= 1.0;
    Ok(MartingaleEvaluated {
        threshold,
        bound: bound.with_impossible(impossible),
        event_impossible: impossible,
    })
}

/// Largest `ε/(3√n)` for which the known-mean corollary applies, or `None`
/// when every `ε` is allowed (`p = 1/2`).
fn cor3_shift_limit(p: f64) -> Option<f64> {
    let skew = (1.0 - 2.0 * p).abs();
    (skew > 0.0).then(|| 2.0 * p * (1.0 - p) / skew)
}

/// Bound for independent variables whose average mean `p` is known.
///
/// Bounds `P(s(np - ΣX) >= ε√n)`. Outside the applicability region
/// `ε/(3√n) < 2p(1-p)/|1-2p|`, or when a variance factor is not positive,
/// the trivial bound 1 is returned with `vacuous` set.
pub fn cor3_rhs(q: &MeanKnownQuery) -> BoundValue {
    let shift_abs = q.epsilon / (3.0 * (q.n as f64).sqrt());
    if cor3_shift_limit(q.p).is_some_and(|limit| shift_abs >= limit) {
        return BoundValue::trivial();
    }
    let shift = q.sign.value() * shift_abs;
    let lower = q.p - shift;
    let upper = 1.0 - q.p + shift;
    if lower <= 0.0 || upper <= 0.0 {
        return BoundValue::trivial();
    }
    BoundValue::from_log(neg_ratio(q.epsilon * q.epsilon, 2.0 * lower * upper))
}

/// Largest `ε` (exclusive) on which [`cor3_rhs`] is informative.
pub fn cor3_epsilon_limit(n: u64, p: f64, sign: Sign) -> f64 {
    let scale = 3.0 * (n as f64).sqrt();
    let factor_limit = match sign {
        Sign::Plus => p,
        Sign::Minus => 1.0 - p,
    };
    let limit = cor3_shift_limit(p).map_or(factor_limit, |l| l.min(factor_limit));
    scale * limit
}

/// Threshold of the known-mean corollary: the constant `ε√n` on side `s`.
pub fn cor3_threshold(q: &MeanKnownQuery) -> ThresholdSpec {
    ThresholdSpec::new(q.epsilon, 0.0, q.n, q.sign)
}
