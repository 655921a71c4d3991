//! Grid certification of the analytic conditions behind the base inequality.
//!
//! A passing report is evidence on the sampled grid only; it is labelled
//! "certified on grid" and says nothing about points off the grid.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use super::curve::grad_along_curve;
use super::g::{curve_z, g_derivs, g_value, GPoint};
use super::z0::{z0_solve, z1_region_with};
use crate::error::{Error, Result};
use crate::fmt::{ser_f64, ser_point3};

pub const REPORT_SCHEMA: &str = "affine-tail.certify/1";

/// Grid definition. Rows are `y = y_min + j·y_step` up to `y_max`; in each
/// row `x = |y| + k·x_step` for `k = 1..` up to `|y| + x_span`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertGridSpec {
    #[serde(serialize_with = "ser_f64")]
    pub y_min: f64,
    #[serde(serialize_with = "ser_f64")]
    pub y_max: f64,
    #[serde(serialize_with = "ser_f64")]
    pub y_step: f64,
    #[serde(serialize_with = "ser_f64")]
    pub x_span: f64,
    #[serde(serialize_with = "ser_f64")]
    pub x_step: f64,
    #[serde(serialize_with = "ser_f64")]
    pub slack: f64,
}

impl Default for CertGridSpec {
    fn default() -> Self {
        Self {
            y_min: -0.499,
            y_max: 3.0,
            y_step: 0.01,
            x_span: 4.0,
            x_step: 0.01,
            slack: 1e-9,
        }
    }
}

fn grid_count(span: f64, step: f64) -> usize {
    (span / step + 1e-9).floor() as usize
}

impl CertGridSpec {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.y_min,
            self.y_max,
            self.y_step,
            self.x_span,
            self.x_step,
            self.slack,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("grid parameters must be finite"));
        }
        if self.y_min <= -0.5 {
            return Err(Error::usage(format!("y_min = {} must exceed -1/2", self.y_min)));
        }
        if self.y_step <= 0.0 || self.x_step <= 0.0 {
            return Err(Error::usage("grid steps must be positive"));
        }
        if self.slack < 0.0 {
            return Err(Error::usage("slack must be nonnegative"));
        }
        if self.y_max < self.y_min || grid_count(self.x_span, self.x_step) == 0 {
            return Err(Error::usage("grid is empty"));
        }
        Ok(())
    }

    pub fn y_values(&self) -> Vec<f64> {
        let rows = grid_count(self.y_max - self.y_min, self.y_step) + 1;
        (0..rows).map(|j| self.y_min + j as f64 * self.y_step).collect()
    }

    pub fn x_values(&self, y: f64) -> impl Iterator<Item = f64> + '_ {
        let base = y.abs();
        (1..=grid_count(self.x_span, self.x_step)).map(move |k| base + k as f64 * self.x_step)
    }
}

/// The five checked properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    /// `|G(|y|, y, z₀(y))| <= slack`.
    DiagonalRoot,
    /// `|∂G/∂x| <= slack` on the stationary curve.
    StationaryOnCurve,
    /// `∂²G/∂x² <= 0`.
    ConcaveInX,
    /// `d/dx G(x, y, curve) >= -slack`.
    CurveGradient,
    /// `G(x, y, z₁(x, y)) >= -slack`.
    Master,
}

impl CheckId {
    pub const ALL: [CheckId; 5] = [
        CheckId::DiagonalRoot,
        CheckId::StationaryOnCurve,
        CheckId::ConcaveInX,
        CheckId::CurveGradient,
        CheckId::Master,
    ];
}

/// Outcome of one check across the grid. Margins are signed so that a
/// check passes when `min_margin >= -slack`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: CheckId,
    pub grid_size: u64,
    #[serde(serialize_with = "ser_f64")]
    pub min_margin: f64,
    /// `(x, y, z)` where the minimum margin is attained.
    #[serde(serialize_with = "ser_point3")]
    pub worst_point: [f64; 3],
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub schema: &'static str,
    pub scope: &'static str,
    pub grid: CertGridSpec,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl CertReport {
    pub fn check(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Debug, Clone, Copy)]
struct Acc {
    count: u64,
    margin: f64,
    point: [f64; 3],
}

impl Acc {
    fn empty() -> Self {
        Self {
            count: 0,
            margin: f64::INFINITY,
            point: [f64::NAN; 3],
        }
    }

    fn push(&mut self, margin: f64, point: [f64; 3]) {
        self.count += 1;
        // NaN margins are failures
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if worse(margin, point, self.margin, self.point) {
            self.margin = margin;
            self.point = point;
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        let count = self.count + other.count;
        if worse(other.margin, other.point, self.margin, self.point) {
            self = other;
        }
        self.count = count;
        self
    }
}

/// Smaller margin wins; ties go to the lexicographically smaller point.
fn worse(m: f64, p: [f64; 3], cur_m: f64, cur_p: [f64; 3]) -> bool {
    match m.partial_cmp(&cur_m) {
        Some(Ordering::Less) => true,
        Some(Ordering::Equal) => lex_less(p, cur_p),
        _ => false,
    }
}

fn lex_less(a: [f64; 3], b: [f64; 3]) -> bool {
    for i in 0..3 {
        match a[i].total_cmp(&b[i]) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    false
}

fn certify_row(spec: &CertGridSpec, y: f64) -> Result<[Acc; 5]> {
    let mut acc = [Acc::empty(); 5];
    let z0 = z0_solve(y)?;
    let diag = g_value(&GPoint::new(y.abs(), y, z0)?);
    acc[0].push(-diag.abs(), [y.abs(), y, z0]);

    for x in spec.x_values(y) {
        let zc = curve_z(x, y);
        let (d1, d2) = g_derivs(&GPoint::new(x, y, zc)?);
        acc[1].push(-d1.abs(), [x, y, zc]);
        acc[2].push(-d2, [x, y, zc]);
        acc[3].push(grad_along_curve(x, y), [x, y, zc]);
        let (_, z1) = z1_region_with(x, y, z0)?;
        acc[4].push(g_value(&GPoint::new(x, y, z1)?), [x, y, z1]);
    }
    Ok(acc)
}

/// Evaluates the five checks on the grid.
///
/// Rows are processed in parallel; the reduction is a minimum with a
/// deterministic tie-break, so the report does not depend on the number of
/// worker threads.
pub fn certify_grid(spec: &CertGridSpec) -> Result<CertReport> {
    spec.validate()?;
    let ys = spec.y_values();
    let rows: Vec<[Acc; 5]> = ys.par_iter().map(|&y| certify_row(spec, y)).collect::<Result<_>>()?;
    let totals = rows.into_iter().fold([Acc::empty(); 5], |mut tot, row| {
        for (t, r) in tot.iter_mut().zip(row) {
            *t = t.merge(r);
        }
        tot
    });
    let checks: Vec<CheckResult> = CheckId::ALL
        .iter()
        .zip(totals)
        .map(|(&id, a)| CheckResult {
            id,
            grid_size: a.count,
            min_margin: a.margin,
            worst_point: a.point,
            passed: a.margin >= -spec.slack,
        })
        .collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(CertReport {
        schema: REPORT_SCHEMA,
        scope: "certified on grid",
        grid: *spec,
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn single_point_master_margin() {
        let spec = CertGridSpec {
            y_min: 0.0,
            y_max: 0.0,
            y_step: 0.1,
            x_span: 1.0,
            x_step: 1.0,
            slack: 1e-9,
        };
        let r = certify_grid(&spec).unwrap();
        let m = r.check(CheckId::Master).unwrap();
        assert_eq!(m.grid_size, 1);
        assert_relative_eq!(m.min_margin, 0.33015036649068099, max_relative = 1e-13);
        assert_eq!(m.worst_point, [1.0, 0.0, 4.0]);
        assert!(r.passed);
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = CertGridSpec {
            y_min: -0.6,
            ..Default::default()
        };
        assert!(matches!(certify_grid(&bad), Err(Error::Usage(_))));
        let empty = CertGridSpec {
            x_span: 0.001,
            ..Default::default()
        };
        assert!(matches!(certify_grid(&empty), Err(Error::Usage(_))));
    }

    #[test]
    fn coarse_grid_passes() {
        let spec = CertGridSpec {
            y_min: -0.45,
            y_max: 2.0,
            y_step: 0.1,
            x_span: 3.0,
            x_step: 0.05,
            slack: 1e-9,
        };
        let r = certify_grid(&spec).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.check(CheckId::DiagonalRoot).unwrap().grid_size, 25);
        assert_eq!(r.check(CheckId::Master).unwrap().grid_size, 25 * 60);
    }

    #[test]
    fn tie_break_is_lexicographic() {
        let mut a = Acc::empty();
        a.push(-1.0, [2.0, 0.0, 0.0]);
        a.push(-1.0, [1.0, 5.0, 0.0]);
        a.push(-0.5, [0.0, 0.0, 0.0]);
        assert_eq!(a.point, [1.0, 5.0, 0.0]);
        let mut b = Acc::empty();
        b.push(-1.0, [0.5, 0.0, 0.0]);
        let m = a.merge(b);
        assert_eq!(m.point, [0.5, 0.0, 0.0]);
        assert_eq!(m.count, 4);
    }
}
