//! Concentration bounds whose deviation threshold is an affine function of
//! the observed sum, together with the machinery to check them.
//!
//! * [`bounds`] evaluates the inequalities and the classical baselines.
//! * [`certify`] checks the analytic conditions behind the base inequality on
//!   finite grids.
//! * [`simulate`] generates history-dependent processes with exactly known
//!   conditional means and measures tail frequencies against the bounds.

pub mod bounds;
pub mod certify;
pub mod error;
pub mod fmt;
pub mod root;
pub mod simulate;

pub use bounds::{BiasStatistic, BoundValue, CorollaryQuery, MeanKnownQuery, Sign, TheoremQuery, ThresholdSpec};
pub use error::{Error, Result};
