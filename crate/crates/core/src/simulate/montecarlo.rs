use rayon::prelude::*;
use serde::Serialize;

use super::binomial::{ci_lower, ci_upper};
use super::process::ProcessSpec;
use super::seed::trial_seed;
use super::trajectory::{exceeds, run};
use crate::bounds::{BoundValue, ThresholdSpec};
use crate::error::{Error, Result};
use crate::fmt::ser_f64;

/// Default one-sided confidence level of the reported upper limit.
pub const DEFAULT_LEVEL: f64 = 0.99;

/// Level of the lower limit used to decide soundness.
pub const SOUNDNESS_LEVEL: f64 = 0.999;

/// Monte-Carlo estimate of a tail probability next to the bound claimed for it.
///
/// `sound` is false only when even the exact one-sided lower confidence
/// limit at [`SOUNDNESS_LEVEL`] lies above the bound, i.e. the data
/// contradict the bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailEstimate {
    pub trials: u64,
    pub violations: u64,
    #[serde(serialize_with = "ser_f64")]
    pub freq: f64,
    #[serde(serialize_with = "ser_f64")]
    pub ci_level: f64,
    #[serde(serialize_with = "ser_f64")]
    pub ci_upper: f64,
    #[serde(serialize_with = "ser_f64")]
    pub soundness_level: f64,
    #[serde(serialize_with = "ser_f64")]
    pub ci_lower: f64,
    #[serde(serialize_with = "ser_f64")]
    pub bound_rhs: f64,
    pub sound: bool,
}

impl TailEstimate {
    pub fn from_counts(trials: u64, violations: u64, level: f64, bound: &BoundValue) -> Self {
        let ci_lower = ci_lower(violations, trials, SOUNDNESS_LEVEL);
        Self {
            trials,
            violations,
            freq: violations as f64 / trials as f64,
            ci_level: level,
            ci_upper: ci_upper(violations, trials, level),
            soundness_level: SOUNDNESS_LEVEL,
            ci_lower,
            bound_rhs: bound.rhs,
            sound: ci_lower <= bound.rhs,
        }
    }
}

/// One event to count during a campaign, with its claimed bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProbe {
    pub threshold: ThresholdSpec,
    pub bound: BoundValue,
}

/// Estimates `P(side · D >= threshold)` from `trials` independent runs.
///
/// Trial `i` is seeded with [`trial_seed`]`(master_seed, i)` and the
/// violation count is an integer sum, so the result does not depend on how
/// trials are scheduled across threads.
pub fn estimate_tail(
    spec: &ProcessSpec,
    n: u64,
    trials: u64,
    thr: &ThresholdSpec,
    bound: &BoundValue,
    master_seed: u64,
    level: f64,
) -> Result<TailEstimate> {
    let probe = TailProbe {
        threshold: *thr,
        bound: *bound,
    };
    Ok(estimate_tail_many(spec, n, trials, &[probe], master_seed, level)?[0])
}

/// As [`estimate_tail`] for several events sharing the same trajectories.
pub fn estimate_tail_many(
    spec: &ProcessSpec,
    n: u64,
    trials: u64,
    probes: &[TailProbe],
    master_seed: u64,
    level: f64,
) -> Result<Vec<TailEstimate>> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::usage("n must be a positive integer"));
    }
    if trials == 0 {
        return Err(Error::usage("trials must be at least 1"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::usage(format!(
            "confidence level must lie in (0, 1), got {level}"
        )));
    }
    if let Some(p) = probes.iter().find(|p| p.threshold.n != n) {
        return Err(Error::usage(format!(
            "threshold built for n = {} used with n = {n}",
            p.threshold.n
        )));
    }
    let k = probes.len();
    let counts = (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; k],
            |mut acc, i| {
                let h = run(spec, n, trial_seed(master_seed, i), |_, _| {});
                for (c, p) in acc.iter_mut().zip(probes) {
                    *c += exceeds(&h, &p.threshold) as u64;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; k],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts
        .into_iter()
        .zip(probes)
        .map(|(v, p)| TailEstimate::from_counts(trials, v, level, &p.bound))
        .collect())
}
