use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `[0, 1]`-valued process whose conditional mean given the past is known
/// exactly.
///
/// Every kind draws `X_m` from at most two atoms whose weighted mean is the
/// conditional mean `μ_m`, so `E(X_m | X_1..X_{m-1}) = μ_m` holds by
/// construction.
///
/// The plain-text form is `name(key=value, ...)`, e.g.
/// `two_point(mu=0.9, c=0.05)`. Files use TOML with a `kind` key:
///
/// ```toml
/// kind = "mean_reverting"
/// p0 = 0.8
/// kappa = 0.5
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProcessSpec {
    /// Independent Bernoulli(p).
    IidBernoulli { p: f64 },
    /// The constant `mu`.
    PointMass { mu: f64 },
    /// `mu ± c` with probability 1/2 each; needs `c <= min(mu, 1 - mu)`.
    TwoPoint { mu: f64, c: f64 },
    /// Bernoulli with mean `clip(p0 + kappa(p0 - running mean), 0, 1)`.
    MeanReverting { p0: f64, kappa: f64 },
    /// Bernoulli with mean `(a0 + S)/(a0 + b0 + m)` after `m` draws.
    PolyaLike { a0: f64, b0: f64 },
    /// Bernoulli with mean `p_hi` while the running deviation is positive and
    /// `p_lo` otherwise.
    AdversarialFlip { p_lo: f64, p_hi: f64 },
}

/// What the conditional mean may depend on: the strict past, summarized.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct History {
    /// Number of draws so far.
    pub m: u64,
    /// `Σ x` so far.
    pub sum: f64,
    /// `Σ μ` so far.
    pub mean_sum: f64,
    /// `Σ (μ - x)` so far.
    pub deviation: f64,
}

impl History {
    pub fn push(&mut self, mu: f64, x: f64) {
        self.m += 1;
        self.sum += x;
        self.mean_sum += mu;
        self.deviation += mu - x;
    }
}

/// Support of one step: one or two `(value, probability)` atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    Point(f64),
    /// `(value, probability)` of each atom; probabilities sum to one.
    Two([(f64, f64); 2]),
}

impl Kernel {
    /// Draws from the kernel given a uniform `u ∈ [0, 1)`.
    pub fn draw(&self, u: f64) -> f64 {
        match *self {
            Kernel::Point(v) => v,
            Kernel::Two([(v0, p0), (v1, _)]) => {
                if u < p0 {
                    v0
                } else {
                    v1
                }
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Kernel::Point(v) => v,
            Kernel::Two([(v0, p0), (v1, p1)]) => v0 * p0 + v1 * p1,
        }
    }
}

fn bernoulli(mu: f64) -> Kernel {
    Kernel::Two([(1.0, mu), (0.0, 1.0 - mu)])
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::usage(format!("{name} must lie in [0, 1], got {v}")));
    }
    Ok(())
}

impl ProcessSpec {
    /// The default battery: near-median, highly biased, and history-driven
    /// processes.
    pub fn battery() -> Vec<ProcessSpec> {
        vec![
            ProcessSpec::IidBernoulli { p: 0.5 },
            ProcessSpec::IidBernoulli { p: 0.95 },
            ProcessSpec::TwoPoint { mu: 0.9, c: 0.05 },
            ProcessSpec::MeanReverting { p0: 0.8, kappa: 0.5 },
            ProcessSpec::PolyaLike { a0: 1.0, b0: 1.0 },
            ProcessSpec::AdversarialFlip { p_lo: 0.4, p_hi: 0.6 },
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProcessSpec::IidBernoulli { .. } => "iid_bernoulli",
            ProcessSpec::PointMass { .. } => "point_mass",
            ProcessSpec::TwoPoint { .. } => "two_point",
            ProcessSpec::MeanReverting { .. } => "mean_reverting",
            ProcessSpec::PolyaLike { .. } => "polya_like",
            ProcessSpec::AdversarialFlip { .. } => "adversarial_flip",
        }
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            ProcessSpec::IidBernoulli { p } => vec![("p", p)],
            ProcessSpec::PointMass { mu } => vec![("mu", mu)],
            ProcessSpec::TwoPoint { mu, c } => vec![("mu", mu), ("c", c)],
            ProcessSpec::MeanReverting { p0, kappa } => vec![("p0", p0), ("kappa", kappa)],
            ProcessSpec::PolyaLike { a0, b0 } => vec![("a0", a0), ("b0", b0)],
            ProcessSpec::AdversarialFlip { p_lo, p_hi } => vec![("p_lo", p_lo), ("p_hi", p_hi)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.params() {
            if !v.is_finite() {
                return Err(Error::usage(format!("{name} must be finite, got {v}")));
            }
        }
        match *self {
            ProcessSpec::IidBernoulli { p } => check_unit("p", p),
            ProcessSpec::PointMass { mu } => check_unit("mu", mu),
            ProcessSpec::TwoPoint { mu, c } => {
                check_unit("mu", mu)?;
                if !(c >= 0.0 && c <= mu.min(1.0 - mu)) {
                    return Err(Error::usage(format!("c must lie in [0, min(mu, 1 - mu)], got {c}")));
                }
                Ok(())
            }
            ProcessSpec::MeanReverting { p0, .. } => check_unit("p0", p0),
            ProcessSpec::PolyaLike { a0, b0 } => {
                if !(a0 > 0.0 && b0 > 0.0) {
                    return Err(Error::usage(format!("a0 and b0 must be positive, got {a0}, {b0}")));
                }
                Ok(())
            }
            ProcessSpec::AdversarialFlip { p_lo, p_hi } => {
                check_unit("p_lo", p_lo)?;
                check_unit("p_hi", p_hi)
            }
        }
    }

    /// `E(X_{m+1} | past)` for a past summarized by `h`.
    pub fn cond_mean(&self, h: &History) -> f64 {
        match *self {
            ProcessSpec::IidBernoulli { p } => p,
            ProcessSpec::PointMass { mu } | ProcessSpec::TwoPoint { mu, .. } => mu,
            ProcessSpec::MeanReverting { p0, kappa } => {
                if h.m == 0 {
                    p0
                } else {
                    (p0 + kappa * (p0 - h.sum / h.m as f64)).clamp(0.0, 1.0)
                }
            }
            ProcessSpec::PolyaLike { a0, b0 } => (a0 + h.sum) / (a0 + b0 + h.m as f64),
            ProcessSpec::AdversarialFlip { p_lo, p_hi } => {
                if h.deviation > 0.0 {
                    p_hi
                } else {
                    p_lo
                }
            }
        }
    }

    /// The step kernel at conditional mean `mu`.
    pub fn kernel(&self, mu: f64) -> Kernel {
        match *self {
            ProcessSpec::PointMass { .. } => Kernel::Point(mu),
            ProcessSpec::TwoPoint { c, .. } => {
                if c == 0.0 {
                    Kernel::Point(mu)
                } else {
                    Kernel::Two([((mu + c).min(1.0), 0.5), ((mu - c).max(0.0), 0.5)])
                }
            }
            _ => bernoulli(mu),
        }
    }
}

impl fmt::Display for ProcessSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name())?;
        for (i, (k, v)) in self.params().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for ProcessSpec {
    type Err = Error;

    /// Parses `name(key=value, ...)` through the same serde rules as files.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::usage(format!("cannot parse process {s:?}: {why}"));
        let (name, rest) = s.split_once('(').ok_or_else(|| bad("expected name(key=value, ...)"))?;
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| bad("missing closing parenthesis"))?;
        let mut map = serde_json::Map::new();
        map.insert("kind".into(), name.trim().into());
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| bad(&format!("{:?} is not a number", v.trim())))?;
            if map.insert(k.trim().to_string(), v.into()).is_some() {
                return Err(bad(&format!("duplicate key {}", k.trim())));
            }
        }
        let spec: ProcessSpec =
            serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| bad(&e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }
}
