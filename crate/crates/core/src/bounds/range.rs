//! Affine rescaling of bounded observations onto `[0, 1]`.

use crate::error::{Error, Result};

fn check_range(lo: f64, hi: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
        return Err(Error::usage(format!("range [{lo}, {hi}] needs finite hi > lo")));
    }
    Ok(hi - lo)
}

fn map_one(x: f64, lo: f64, hi: f64, width: f64, index: usize) -> Result<f64> {
    if !(lo..=hi).contains(&x) {
        return Err(Error::domain(format!(
            "sample {x} at index {index} outside [{lo}, {hi}]"
        )));
    }
    Ok(((x - lo) / width).clamp(0.0, 1.0))
}

/// Maps samples from `[lo, hi]` onto `[0, 1]` via `x -> (x - lo)/(hi - lo)`.
pub fn normalize_range(samples: &[f64], lo: f64, hi: f64) -> Result<Vec<f64>> {
    let width = check_range(lo, hi)?;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| map_one(x, lo, hi, width, i))
        .collect()
}

/// Per-index variant: sample `m` lies in `ranges[m] = (lo_m, hi_m)`.
///
/// Only ranges of one common width are supported; differing widths are
/// rejected with [`Error::Unsupported`].
pub fn normalize_ranges(samples: &[f64], ranges: &[(f64, f64)]) -> Result<Vec<f64>> {
    if samples.len() != ranges.len() {
        return Err(Error::usage(format!(
            "{} samples but {} ranges",
            samples.len(),
            ranges.len()
        )));
    }
    let Some(&(lo0, hi0)) = ranges.first() else {
        return Ok(Vec::new());
    };
    let width = check_range(lo0, hi0)?;
    for &(lo, hi) in ranges {
        let w = check_range(lo, hi)?;
        if (w - width).abs() > 1e-12 * width {
            return Err(Error::Unsupported(format!(
                "ranges of unequal width ({width} and {w}) are not supported"
            )));
        }
    }
    samples
        .iter()
        .zip(ranges)
        .enumerate()
        .map(|(i, (&x, &(lo, hi)))| map_one(x, lo, hi, width, i))
        .collect()
}
