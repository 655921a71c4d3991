//! Inversion of a bound: the deviation scale `ε` reaching a target probability.

use super::adaptive::{cor1_bound, cor3_epsilon_limit, cor3_rhs};
use super::baseline::{baseline_rhs, chernoff_mult_equiv_rhs, rs13_rhs, BaselineKind};
use super::types::{BoundValue, CorollaryQuery, MeanKnownQuery, Sign};
use crate::error::{Error, Result};
use crate::root::{bisect, expand_upper, Monotone};

/// Guaranteed absolute accuracy of `ε`; the search itself runs to
/// floating-point resolution.
pub const EPSILON_TOL: f64 = 1e-12;

/// A bound family viewed as a function of `ε` with everything else fixed.
#[derive(Debug, Clone, PartialEq)]
pub enum EpsilonFamily {
    Baseline {
        kind: BaselineKind,
        n: u64,
        variance: Option<f64>,
    },
    Cor1 {
        n: u64,
        delta: f64,
        sign: Sign,
    },
    Cor3 {
        n: u64,
        p: f64,
        sign: Sign,
    },
    Rs13 {
        means: Vec<f64>,
        sign: Sign,
    },
    ChernoffMult {
        n: u64,
        p: f64,
        sign: Sign,
    },
}

/// Interval of `ε` on which a family is valid, informative and strictly
/// decreasing. Ends are exclusive unless marked closed.
#[derive(Debug, Clone, Copy, PartialEq)]
struct EpsilonDomain {
    lo: f64,
    lo_closed: bool,
    hi: f64,
}

impl EpsilonFamily {
    /// Bound at a given `ε`.
    pub fn eval(&self, epsilon: f64) -> Result<BoundValue> {
        match self {
            EpsilonFamily::Baseline { kind, n, variance } => baseline_rhs(*kind, *n, epsilon, *variance),
            EpsilonFamily::Cor1 { n, delta, sign } => cor1_bound(&CorollaryQuery::new(*n, epsilon, *delta, *sign)?),
            EpsilonFamily::Cor3 { n, p, sign } => Ok(cor3_rhs(&MeanKnownQuery::new(*n, *p, epsilon, *sign)?)),
            EpsilonFamily::Rs13 { means, sign } => rs13_rhs(means, epsilon, *sign),
            EpsilonFamily::ChernoffMult { n, p, sign } => chernoff_mult_equiv_rhs(*n, *p, epsilon, *sign),
        }
    }

    fn domain(&self) -> Result<EpsilonDomain> {
        let open_from_zero = |hi: f64| EpsilonDomain {
            lo: 0.0,
            lo_closed: true,
            hi,
        };
        match self {
            EpsilonFamily::Baseline { .. } => Ok(open_from_zero(f64::INFINITY)),
            EpsilonFamily::Rs13 { means, sign } => {
                let probe = rs13_rhs(means, 1.0, *sign)?;
                if probe.rhs == 0.0 {
                    return Err(Error::domain(
                        "bound is 0 for every ε > 0; no ε reaches a positive target",
                    ));
                }
                Ok(open_from_zero(f64::INFINITY))
            }
            EpsilonFamily::Cor3 { n, p, sign } => {
                MeanKnownQuery::new(*n, *p, 0.0, *sign)?;
                Ok(open_from_zero(cor3_epsilon_limit(*n, *p, *sign)))
            }
            EpsilonFamily::ChernoffMult { n, p, sign } => {
                if !(*p > 0.0 && *p <= 1.0) {
                    return Err(Error::domain(format!("p must lie in (0, 1], got {p}")));
                }
                Ok(open_from_zero(match sign {
                    Sign::Plus => (*n as f64).sqrt() * p,
                    Sign::Minus => f64::INFINITY,
                }))
            }
            EpsilonFamily::Cor1 { n, delta, sign } => cor1_domain(*n, *delta, *sign),
        }
    }
}

/// `q(ε) = δ - kε` must satisfy `|q| < 1` and `δq < 1`; each constraint is
/// an interval in `q`, hence in `ε`.
fn cor1_domain(n: u64, delta: f64, sign: Sign) -> Result<EpsilonDomain> {
    if n == 0 {
        return Err(Error::usage("n must be a positive integer"));
    }
    let k = 4.0 * sign.value() / (3.0 * (n as f64).sqrt());
    let mut q_lo: f64 = -1.0;
    let mut q_hi: f64 = 1.0;
    if delta > 0.0 {
        q_hi = q_hi.min(1.0 / delta);
    } else if delta < 0.0 {
        q_lo = q_lo.max(1.0 / delta);
    }
    // ε at which q reaches a given value
    let eps_at = |q: f64| (delta - q) / k;
    let (a, b) = if k > 0.0 {
        (eps_at(q_hi), eps_at(q_lo))
    } else {
        (eps_at(q_lo), eps_at(q_hi))
    };
    let lo = a.max(0.0);
    let hi = b;
    if !(hi > lo) {
        return Err(Error::domain(format!(
            "no ε gives an informative bound for δ = {delta}, s = {sign}, n = {n}"
        )));
    }
    Ok(EpsilonDomain {
        lo,
        lo_closed: a < 0.0,
        hi,
    })
}

fn next_toward(x: f64, toward: f64) -> f64 {
    if toward > x {
        x.next_up()
    } else {
        x.next_down()
    }
}

/// Smallest `ε` with `rhs(ε) = target`, found by bracketed bisection.
///
/// `target` must lie in `(0, 1]`. A target of 1 maps to `ε = 0` when the
/// family starts there. Targets outside the range the family attains on its
/// domain are reported as [`Error::Domain`] together with that range.
pub fn invert_epsilon(family: &EpsilonFamily, target: f64) -> Result<f64> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(Error::usage(format!("target must lie in (0, 1], got {target}")));
    }
    let dom = family.domain()?;
    let log_at = |eps: f64| family.eval(eps).map(|b| b.log_rhs).unwrap_or(f64::NAN);
    let log_target = target.ln();

    let lo = if dom.lo_closed {
        dom.lo
    } else {
        next_toward(dom.lo, dom.hi)
    };
    let log_sup = log_at(lo);
    if log_target >= log_sup {
        if log_target == log_sup {
            return Ok(lo);
        }
        return Err(unreachable(target, log_sup, family, dom));
    }

    let hi = if dom.hi.is_infinite() {
        match expand_upper(log_at, log_target, lo.max(1.0), 1e150, Monotone::Decreasing) {
            Some(hi) => hi,
            None => return Err(unreachable(target, log_sup, family, dom)),
        }
    } else {
        // the analytic end can be a few ulps past the last informative point
        let mut hi = next_toward(dom.hi, dom.lo);
        for _ in 0..64 {
            if log_at(hi) < 0.0 {
                break;
            }
            hi = next_toward(hi, dom.lo);
        }
        if !(log_at(hi) <= log_target) {
            return Err(unreachable(target, log_sup, family, dom));
        }
        hi
    };
    // refine to floating-point resolution rather than stopping at the
    // tolerance: near the end of a domain the bound can be steep enough that
    // an ε error of EPSILON_TOL moves rhs by more than 1e-9 relative
    Ok(bisect(log_at, log_target, lo, hi, Monotone::Decreasing, 0.0))
}

fn unreachable(target: f64, log_sup: f64, family: &EpsilonFamily, dom: EpsilonDomain) -> Error {
    let inf = if dom.hi.is_infinite() {
        0.0
    } else {
        family.eval(next_toward(dom.hi, dom.lo)).map(|b| b.rhs).unwrap_or(0.0)
    };
    Error::domain(format!(
        "target {target} outside the attainable range [{inf:e}, {:e}] for ε in ({}, {})",
        log_sup.exp(),
        dom.lo,
        dom.hi
    ))
}
