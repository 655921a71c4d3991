//! Bracketed bisection for monotone scalar equations.

/// Direction of a monotone function on its bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
}

/// Bisects `f(x) = target` on `[lo, hi]` for a monotone `f`.
///
/// Iterates until the bracket stops shrinking in floating point or its
/// width falls below `abs_tol`, and returns the midpoint of the final
/// bracket. The caller guarantees that `target` lies between `f(lo)` and
/// `f(hi)`.
pub fn bisect<F>(f: F, target: f64, mut lo: f64, mut hi: f64, dir: Monotone, abs_tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(lo <= hi);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= abs_tol {
            break;
        }
        let v = f(mid);
        let below = match dir {
            Monotone::Increasing => v < target,
            Monotone::Decreasing => v > target,
        };
        if below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Doubles `hi` (starting from `start`) until `f(hi)` passes `target`.
///
/// Returns `None` if no bracket is found before `hi` overflows `limit`.
pub fn expand_upper<F>(f: F, target: f64, start: f64, limit: f64, dir: Monotone) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut hi = start.max(f64::MIN_POSITIVE);
    while hi <= limit {
        let v = f(hi);
        let passed = match dir {
            Monotone::Increasing => v >= target,
            Monotone::Decreasing => v <= target,
        };
        if passed {
            return Some(hi);
        }
        hi *= 2.0;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_by_bisection() {
        let x = bisect(|x| x * x, 2.0, 0.0, 2.0, Monotone::Increasing, 0.0);
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn decreasing_with_expansion() {
        let f = |x: f64| (-x).exp();
        let hi = expand_upper(f, 1e-6, 1.0, 1e6, Monotone::Decreasing).unwrap();
        assert_eq!(hi, 16.0);
        let x = bisect(f, 1e-6, 0.0, hi, Monotone::Decreasing, 0.0);
        assert!((x - 1e6f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn expansion_gives_up() {
        assert!(expand_upper(|_| 1.0, 0.5, 1.0, 1e3, Monotone::Decreasing).is_none());
    }
}
