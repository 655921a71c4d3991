//! Exact binomial tail quantities for Monte-Carlo confidence limits.

use statrs::function::beta::beta_reg;

use crate::root::{bisect, Monotone};

/// `P(Bin(n, p) <= k)`, through the regularized incomplete beta function.
pub fn binom_cdf(k: u64, n: u64, p: f64) -> f64 {
    if k >= n {
        return 1.0;
    }
    if p <= 0.0 {
        return 1.0;
    }
    if p >= 1.0 {
        return 0.0;
    }
    beta_reg((n - k) as f64, (k + 1) as f64, 1.0 - p)
}

/// `P(Bin(n, p) >= k)`.
pub fn binom_sf(k: u64, n: u64, p: f64) -> f64 {
    if k == 0 {
        1.0
    } else {
        1.0 - binom_cdf(k - 1, n, p)
    }
}

/// Exact one-sided upper confidence limit for a success probability after
/// `k` successes in `n` trials: the smallest `p` with
/// `P(Bin(n, p) <= k) <= 1 - level`.
pub fn ci_upper(k: u64, n: u64, level: f64) -> f64 {
    assert!(k <= n && n > 0, "need 0 <= k <= n, n > 0");
    assert!(level > 0.0 && level < 1.0, "level must lie in (0, 1)");
    if k == n {
        return 1.0;
    }
    bisect(|p| binom_cdf(k, n, p), 1.0 - level, 0.0, 1.0, Monotone::Decreasing, 0.0)
}

/// Exact one-sided lower confidence limit: the largest `p` with
/// `P(Bin(n, p) >= k) <= 1 - level`.
pub fn ci_lower(k: u64, n: u64, level: f64) -> f64 {
    assert!(k <= n && n > 0, "need 0 <= k <= n, n > 0");
    assert!(level > 0.0 && level < 1.0, "level must lie in (0, 1)");
    if k == 0 {
        return 0.0;
    }
    bisect(|p| binom_sf(k, n, p), 1.0 - level, 0.0, 1.0, Monotone::Increasing, 0.0)
}

/// Central band `[lo, hi]` of violation counts holding with probability at
/// least `level` when the true rate is `p`: `lo` is the largest count with
/// `P(X < lo) <= (1 - level)/2`, `hi` the smallest with `P(X > hi) <= (1 - level)/2`.
pub fn binomial_band(p: f64, trials: u64, level: f64) -> (u64, u64) {
    let tail = 0.5 * (1.0 - level);
    // smallest hi with P(X <= hi) >= 1 - tail
    let hi = first_count(trials, |k| binom_cdf(k, trials, p) >= 1.0 - tail);
    // largest lo with P(X <= lo - 1) <= tail
    let lo = first_count(trials, |k| binom_cdf(k, trials, p) > tail);
    (lo, hi)
}

/// Smallest `k` in `0..=n` satisfying a predicate that is monotone in `k`.
fn first_count<F: Fn(u64) -> bool>(n: u64, pred: F) -> u64 {
    let (mut lo, mut hi) = (0u64, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn upper_limit_examples() {
        assert_relative_eq!(ci_upper(0, 1000, 0.99), 1.0 - 0.01f64.powf(1e-3), max_relative = 1e-12);
        assert!((ci_upper(0, 1000, 0.99) - 0.0045946).abs() < 1e-7);
        assert_eq!(ci_upper(10, 10, 0.99), 1.0);
        // (1-p)^10 + 10p(1-p)^9 = 0.01, solved with mpmath
        assert_relative_eq!(ci_upper(1, 10, 0.99), 0.50435266293080134, max_relative = 1e-12);
    }

    #[test]
    fn lower_limit_mirrors_upper() {
        for (k, n) in [(1, 10), (3, 50), (999, 1000), (17, 100_000)] {
            assert_relative_eq!(
                ci_lower(k, n, 0.999),
                1.0 - ci_upper(n - k, n, 0.999),
                max_relative = 1e-10
            );
        }
        assert_eq!(ci_lower(0, 100, 0.999), 0.0);
    }

    #[test]
    fn cdf_matches_direct_sum() {
        let (n, p) = (12u64, 0.3f64);
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..=n {
            if k > 0 {
                binom *= (n - k + 1) as f64 / k as f64;
            }
            acc += binom * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
            assert_relative_eq!(binom_cdf(k, n, p), acc, max_relative = 1e-12);
        }
    }

    #[test]
    fn band_contains_the_mean() {
        let (lo, hi) = binomial_band(0.0625, 100_000, 0.999);
        assert!(lo < 6250 && 6250 < hi);
        assert!(hi - lo < 600);
        assert_eq!(binomial_band(0.0, 1000, 0.999), (0, 0));
    }
}
