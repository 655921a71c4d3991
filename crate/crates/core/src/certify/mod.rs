//! Numerical checks of the analytic facts the base inequality rests on.
//!
//! The exponent gap `G(x, y, z)` compares the claimed bound with the Chernoff
//! estimate; the inequality follows once `G(x, y, z₁(x, y)) >= 0` on
//! `{x > |y|, y > -1/2}`. [`certify_grid`] checks that and the four
//! supporting conditions on a finite grid.

mod chernoff_step;
mod curve;
mod g;
mod grid;
mod z0;

pub use chernoff_step::{chernoff_step, chernoff_step_gap, scan_max_moment, step_moment, ChernoffStep};
pub use curve::{f1_direct, f1_series, f2_direct, f2_series, grad_along_curve, taylor_check, TaylorCheck};
pub use g::{curve_z, g_derivs, g_value, phi, GPoint, SERIES_CUTOFF};
pub use grid::{certify_grid, CertGridSpec, CertReport, CheckId, CheckResult, REPORT_SCHEMA};
pub use z0::{closed_form, region_boundary, y_minus, y_plus, z0_solve, z1_region, z1_region_with, RegionTag};
