use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::ser_f64;

/// Direction of the deviation being bounded, `s = +1` or `s = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::usage(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("n must be a positive integer"));
    }
    Ok(())
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::usage(format!("{name} must be finite, got {v}")));
    }
    Ok(())
}

/// Parameters `(n, a, b)` of the base inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremQuery {
    pub n: u64,
    pub a: f64,
    pub b: f64,
}

impl TheoremQuery {
    pub fn new(n: u64, a: f64, b: f64) -> Result<Self> {
        check_n(n)?;
        check_finite("a", a)?;
        check_finite("b", b)?;
        if b < 0.0 {
            return Err(Error::domain(format!("b must be nonnegative, got {b}")));
        }
        Ok(Self { n, a, b })
    }

    pub fn sqrt_n(&self) -> f64 {
        (self.n as f64).sqrt()
    }
}

/// Parameters `(n, ε, δ, s)` shared by the two corollary forms.
///
/// `delta` is the a-priori guess of the bias statistic. The validity
/// predicate differs between the two forms, so it is checked by the
/// evaluators rather than here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryQuery {
    pub n: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub sign: Sign,
}

impl CorollaryQuery {
    pub fn new(n: u64, epsilon: f64, delta: f64, sign: Sign) -> Result<Self> {
        check_n(n)?;
        check_finite("epsilon", epsilon)?;
        check_finite("delta", delta)?;
        if epsilon < 0.0 {
            return Err(Error::domain(format!("epsilon must be nonnegative, got {epsilon}")));
        }
        Ok(Self {
            n,
            epsilon,
            delta,
            sign,
        })
    }

    pub fn sqrt_n(&self) -> f64 {
        (self.n as f64).sqrt()
    }

    /// `δ - 4sε/(3√n)`, the effective slope of the single-sequence form.
    pub fn shifted_delta(&self) -> f64 {
        self.delta - 4.0 * self.sign.value() * self.epsilon / (3.0 * self.sqrt_n())
    }

    /// `δ' + 2sε/(3√n)`, the effective slope of the martingale form.
    pub fn shifted_delta_martingale(&self) -> f64 {
        self.delta + 2.0 * self.sign.value() * self.epsilon / (3.0 * self.sqrt_n())
    }
}

/// Parameters `(n, p, ε, s)` for independent variables with known average mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanKnownQuery {
    pub n: u64,
    pub p: f64,
    pub epsilon: f64,
    pub sign: Sign,
}

impl MeanKnownQuery {
    pub fn new(n: u64, p: f64, epsilon: f64, sign: Sign) -> Result<Self> {
        check_n(n)?;
        check_finite("epsilon", epsilon)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("p must lie in [0, 1], got {p}")));
        }
        if epsilon < 0.0 {
            return Err(Error::domain(format!("epsilon must be nonnegative, got {epsilon}")));
        }
        Ok(Self { n, p, epsilon, sign })
    }
}

/// A probability upper bound, kept primarily in log space.
///
/// `rhs` is always `exp(log_rhs)`; bounds at or above one are flagged
/// `vacuous` but never clamped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    #[serde(serialize_with = "ser_f64")]
    pub rhs: f64,
    #[serde(serialize_with = "ser_f64")]
    pub log_rhs: f64,
    pub vacuous: bool,
    /// The bounded event cannot occur for these parameters; its probability is 0.
    pub event_impossible: bool,
}

impl BoundValue {
    pub fn from_log(log_rhs: f64) -> Self {
        let log_rhs = log_rhs + 0.0;
        Self {
            rhs: log_rhs.exp(),
            log_rhs,
            vacuous: log_rhs >= 0.0,
            event_impossible: false,
        }
    }

    /// The trivial bound `P <= 1`.
    pub fn trivial() -> Self {
        Self::from_log(0.0)
    }

    pub(crate) fn with_impossible(mut self, impossible: bool) -> Self {
        self.event_impossible = impossible;
        self
    }
}

/// `-num / den` in log space, where `num >= 0` and `den` may be any sign.
///
/// `num == 0` gives exponent 0 (the trivial bound) regardless of `den`;
/// `den == 0` with `num > 0` gives `+inf`, the limit from the vacuous side.
pub(crate) fn neg_ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else if den == 0.0 {
        f64::INFINITY
    } else {
        -num / den
    }
}

/// Which bias statistic a threshold consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BiasStatistic {
    /// `Δ = 1 - 2S/n` from the realized samples.
    Observed,
    /// `Δ' = 1 - 2Σμ_m/n`, the mean of the predictable biases.
    Predicted,
}

/// A threshold affine in a bias statistic.
///
/// The bounded event is `side * D >= (base + slope * Δ) * scale`, where
/// `D = Σ (E(X_m | past) - X_m)`. By default `Δ = 1 - 2S/n` with
/// `S = Σ X_m`; martingale-form thresholds use the predictable `Δ'` instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSpec {
    #[serde(serialize_with = "ser_f64")]
    pub base: f64,
    #[serde(serialize_with = "ser_f64")]
    pub slope: f64,
    #[serde(serialize_with = "ser_f64")]
    pub scale: f64,
    pub n: u64,
    pub side: Sign,
    pub statistic: BiasStatistic,
}

impl ThresholdSpec {
    pub fn new(base: f64, slope: f64, n: u64, side: Sign) -> Self {
        Self {
            base,
            // adding +0.0 turns a negated zero slope into +0.0
            slope: slope + 0.0,
            scale: (n as f64).sqrt(),
            n,
            side,
            statistic: BiasStatistic::Observed,
        }
    }

    pub fn with_statistic(mut self, statistic: BiasStatistic) -> Self {
        self.statistic = statistic;
        self
    }

    pub fn at_delta(&self, delta: f64) -> f64 {
        (self.base + self.slope * delta) * self.scale
    }

    pub fn at_sum(&self, sum: f64) -> f64 {
        self.at_delta(1.0 - 2.0 * sum / self.n as f64)
    }

    /// Smallest threshold over `Δ ∈ [-1, 1]`.
    pub fn min_over_range(&self) -> f64 {
        (self.base - self.slope.abs()) * self.scale
    }

    /// Whether the event `side * d >= threshold(Δ)` occurs.
    pub fn is_exceeded(&self, d: f64, delta: f64) -> bool {
        self.side.value() * d >= self.at_delta(delta)
    }

    /// Warnings for thresholds that turn negative for some admissible `Δ`.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.min_over_range() < 0.0 {
            out.push(format!(
                "threshold is negative for some bias values (minimum {:.6} over [-1, 1]); the bound holds but is weak there",
                self.min_over_range()
            ));
        }
        out
    }
}

/// A martingale described by its increments and predictable biases.
///
/// Each increment satisfies `(Δ_m - 1)/2 <= Y_m - Y_{m-1} <= (Δ_m + 1)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MartingaleView {
    increments: Vec<f64>,
    biases: Vec<f64>,
}

impl MartingaleView {
    pub fn new(increments: Vec<f64>, biases: Vec<f64>) -> Result<Self> {
        if increments.len() != biases.len() {
            return Err(Error::usage(format!(
                "increments ({}) and biases ({}) differ in length",
                increments.len(),
                biases.len()
            )));
        }
        if increments.is_empty() {
            return Err(Error::usage("martingale view needs at least one step"));
        }
        const TOL: f64 = 1e-12;
        for (m, (&inc, &bias)) in increments.iter().zip(&biases).enumerate() {
            if !(-1.0..=1.0).contains(&bias) {
                return Err(Error::domain(format!("bias {bias} at step {} outside [-1, 1]", m + 1)));
            }
            if inc < 0.5 * (bias - 1.0) - TOL || inc > 0.5 * (bias + 1.0) + TOL {
                return Err(Error::domain(format!(
                    "increment {inc} at step {} outside [{}, {}]",
                    m + 1,
                    0.5 * (bias - 1.0),
                    0.5 * (bias + 1.0)
                )));
            }
        }
        Ok(Self { increments, biases })
    }

    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    pub fn increments(&self) -> &[f64] {
        &self.increments
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    /// `Δ'`, the mean of the biases.
    pub fn delta_prime(&self) -> f64 {
        self.biases.iter().sum::<f64>() / self.biases.len() as f64
    }

    /// `Y_0 - Y_n`.
    pub fn drop(&self) -> f64 {
        -self.increments.iter().sum::<f64>()
    }

    /// The unit-range sequence `X_m = Y_m - Y_{m-1} + (1 - Δ_m)/2` together
    /// with its conditional means `(1 - Δ_m)/2`.
    pub fn to_unit_sequence(&self) -> (Vec<f64>, Vec<f64>) {
        self.increments
            .iter()
            .zip(&self.biases)
            .map(|(&inc, &bias)| {
                let mean = 0.5 * (1.0 - bias);
                ((inc + mean).clamp(0.0, 1.0), mean)
            })
            .unzip()
    }
}
