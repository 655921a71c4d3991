use serde::Serialize;

use super::process::{History, Kernel, ProcessSpec};
use super::trajectory::exceeds;
use crate::bounds::ThresholdSpec;
use crate::error::{Error, Result};
use crate::fmt::ser_f64;

/// Longest sequence [`enumerate_exact`] accepts.
pub const MAX_ENUM_N: u64 = 20;

/// Exact tail probability by full enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnumResult {
    #[serde(serialize_with = "ser_f64")]
    pub exact_prob: f64,
    /// Number of outcome sequences with positive probability.
    pub outcomes: u64,
}

/// `P(side · D >= threshold)` summed over every outcome sequence, each
/// weighted by the product of its step probabilities.
///
/// Statistics along each path are accumulated in the same order as in
/// simulation, so an outcome counts here exactly when a simulated run with
/// the same draws would count it.
pub fn enumerate_exact(spec: &ProcessSpec, n: u64, thr: &ThresholdSpec) -> Result<EnumResult> {
    Ok(enumerate_exact_many(spec, n, std::slice::from_ref(thr))?[0])
}

/// As [`enumerate_exact`] for several thresholds in one pass.
pub fn enumerate_exact_many(spec: &ProcessSpec, n: u64, thrs: &[ThresholdSpec]) -> Result<Vec<EnumResult>> {
    spec.validate()?;
    if n == 0 || n > MAX_ENUM_N {
        return Err(Error::usage(format!(
            "enumeration needs 1 <= n <= {MAX_ENUM_N}, got {n}"
        )));
    }
    if let Some(t) = thrs.iter().find(|t| t.n != n) {
        return Err(Error::usage(format!(
            "threshold built for n = {} used with n = {n}",
            t.n
        )));
    }
    let mut probs = vec![0.0; thrs.len()];
    let mut outcomes = 0u64;
    walk(spec, n, History::default(), 1.0, thrs, &mut probs, &mut outcomes);
    Ok(probs
        .into_iter()
        .map(|exact_prob| EnumResult { exact_prob, outcomes })
        .collect())
}

fn walk(
    spec: &ProcessSpec,
    n: u64,
    h: History,
    weight: f64,
    thrs: &[ThresholdSpec],
    probs: &mut [f64],
    outcomes: &mut u64,
) {
    if h.m == n {
        *outcomes += 1;
        for (p, t) in probs.iter_mut().zip(thrs) {
            if exceeds(&h, t) {
                *p += weight;
            }
        }
        return;
    }
    let mu = spec.cond_mean(&h);
    let kernel = spec.kernel(mu);
    let point;
    let atoms: &[(f64, f64)] = match &kernel {
        Kernel::Point(v) => {
            point = [(*v, 1.0)];
            &point
        }
        Kernel::Two(a) => a,
    };
    for &(x, p) in atoms {
        if p > 0.0 {
            let mut next = h;
            next.push(mu, x);
            walk(spec, n, next, weight * p, thrs, probs, outcomes);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{theorem1_rhs, theorem1_threshold, Sign, TheoremQuery};

    fn thm(n: u64, a: f64, b: f64) -> ThresholdSpec {
        theorem1_threshold(&TheoremQuery::new(n, a, b).unwrap())
    }

    #[test]
    fn fair_coin_examples() {
        let coin = ProcessSpec::IidBernoulli { p: 0.5 };
        let r = enumerate_exact(&coin, 4, &thm(4, 0.0, 1.0)).unwrap();
        assert_eq!(r.exact_prob, 0.0625);
        assert_eq!(r.outcomes, 16);

        let r = enumerate_exact(&coin, 4, &thm(4, 0.5, 1.0)).unwrap();
        assert_eq!(r.exact_prob, 0.0625);
        let rhs = theorem1_rhs(&TheoremQuery::new(4, 0.5, 1.0).unwrap()).unwrap();
        assert!((rhs.rhs - (-27.0f64 / 32.0).exp()).abs() < 1e-15);
    }

    #[test]
    fn unreachable_threshold() {
        let coin = ProcessSpec::IidBernoulli { p: 0.5 };
        let thr = ThresholdSpec::new(1.5, 0.0, 1, Sign::Plus);
        assert_eq!(enumerate_exact(&coin, 1, &thr).unwrap().exact_prob, 0.0);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let always = ThresholdSpec::new(-10.0, 0.0, 10, Sign::Plus);
        for spec in ProcessSpec::battery() {
            let r = enumerate_exact(&spec, 10, &always).unwrap();
            assert!((r.exact_prob - 1.0).abs() < 1e-12, "{spec}");
        }
        let r = enumerate_exact(&ProcessSpec::PointMass { mu: 0.3 }, 10, &always).unwrap();
        assert_eq!(r.outcomes, 1);
    }

    #[test]
    fn rejects_long_sequences() {
        let coin = ProcessSpec::IidBernoulli { p: 0.5 };
        assert!(matches!(
            enumerate_exact(&coin, 21, &thm(21, 0.0, 1.0)),
            Err(Error::Usage(_))
        ));
    }
}
