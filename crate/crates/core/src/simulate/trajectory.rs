use std::io::Write;

use rand::Rng;

use super::process::{History, ProcessSpec};
use super::seed::trial_rng;
use crate::bounds::{BiasStatistic, MartingaleView, ThresholdSpec};
use crate::error::{Error, Result};
use crate::fmt::sig17;

/// Realized samples with the conditional means they were drawn under.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<f64>,
    pub cond_means: Vec<f64>,
    pub seed: u64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Running statistics after the last step, accumulated in step order.
    pub fn summary(&self) -> History {
        let mut h = History::default();
        for (&x, &mu) in self.samples.iter().zip(&self.cond_means) {
            h.push(mu, x);
        }
        h
    }

    /// `S = Σ x_m`.
    pub fn sum(&self) -> f64 {
        self.summary().sum
    }

    /// `Δ = 1 - 2S/n`.
    pub fn bias(&self) -> f64 {
        observed_bias(&self.summary())
    }

    /// `Δ' = 1 - 2Σμ_m/n`, the mean of the per-step biases `1 - 2μ_m`.
    pub fn predicted_bias(&self) -> f64 {
        predicted_bias(&self.summary())
    }

    /// `D = Σ (μ_m - x_m)`.
    pub fn deviation(&self) -> f64 {
        self.summary().deviation
    }

    /// The martingale `Y_m = Σ_{k<=m} (x_k - μ_k)` with biases `1 - 2μ_m`, so
    /// that `Y_0 - Y_n = D`.
    pub fn martingale_view(&self) -> Result<MartingaleView> {
        MartingaleView::new(
            self.samples
                .iter()
                .zip(&self.cond_means)
                .map(|(x, mu)| x - mu)
                .collect(),
            self.cond_means.iter().map(|mu| 1.0 - 2.0 * mu).collect(),
        )
    }

    /// Writes the trajectory as CSV with columns `index, x, mu`; `index`
    /// starts at 1.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::usage(format!("cannot write trajectory: {e}"));
        w.write_record(["index", "x", "mu"]).map_err(io)?;
        for (i, (&x, &mu)) in self.samples.iter().zip(&self.cond_means).enumerate() {
            w.write_record([(i + 1).to_string(), sig17(x), sig17(mu)]).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::usage(format!("cannot write trajectory: {e}")))?;
        Ok(())
    }
}

pub(crate) fn observed_bias(h: &History) -> f64 {
    1.0 - 2.0 * h.sum / h.m as f64
}

pub(crate) fn predicted_bias(h: &History) -> f64 {
    1.0 - 2.0 * h.mean_sum / h.m as f64
}

/// Whether the final statistics of a run fall in the threshold's event.
pub(crate) fn exceeds(h: &History, thr: &ThresholdSpec) -> bool {
    let delta = match thr.statistic {
        BiasStatistic::Observed => observed_bias(h),
        BiasStatistic::Predicted => predicted_bias(h),
    };
    thr.is_exceeded(h.deviation, delta)
}

/// Runs `n` steps from a fresh generator, calling `visit(mu, x)` per step.
pub(crate) fn run<F: FnMut(f64, f64)>(spec: &ProcessSpec, n: u64, seed: u64, mut visit: F) -> History {
    let mut rng = trial_rng(seed);
    let mut h = History::default();
    for _ in 0..n {
        let mu = spec.cond_mean(&h);
        let x = spec.kernel(mu).draw(rng.gen::<f64>());
        visit(mu, x);
        h.push(mu, x);
    }
    h
}

/// Draws one trajectory. Deterministic in `(spec, n, seed)`.
pub fn generate(spec: &ProcessSpec, n: u64, seed: u64) -> Result<Trajectory> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::usage("n must be a positive integer"));
    }
    let mut samples = Vec::with_capacity(n as usize);
    let mut cond_means = Vec::with_capacity(n as usize);
    run(spec, n, seed, |mu, x| {
        cond_means.push(mu);
        samples.push(x);
    });
    Ok(Trajectory {
        samples,
        cond_means,
        seed,
    })
}

/// Whether `side · D >= threshold` on this trajectory, with the threshold
/// evaluated at the trajectory's own bias statistic.
pub fn violation_check(t: &Trajectory, thr: &ThresholdSpec) -> Result<bool> {
    if t.samples.len() != t.cond_means.len() {
        return Err(Error::usage("samples and conditional means differ in length"));
    }
    if t.len() as u64 != thr.n {
        return Err(Error::usage(format!(
            "threshold built for n = {} applied to a trajectory of length {}",
            thr.n,
            t.len()
        )));
    }
    Ok(exceeds(&t.summary(), thr))
}
