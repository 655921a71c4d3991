//! Bound evaluators: the affine-threshold inequality, its corollary forms,
//! and the classical baselines they are compared against.

mod adaptive;
mod baseline;
mod invert;
mod range;
mod types;

pub use adaptive::{
    cor1_bound, cor1_eval, cor1_threshold, cor1_to_theorem1, cor2_eval, cor2_threshold, cor3_epsilon_limit, cor3_rhs,
    cor3_threshold, theorem1_rhs, theorem1_threshold, Evaluated, MartingaleEvaluated,
};
pub use baseline::{baseline_rhs, c_of, chernoff_mult_equiv_rhs, chernoff_mult_rhs, rs13_rhs, BaselineKind};
pub use invert::{invert_epsilon, EpsilonFamily, EPSILON_TOL};
pub use range::{normalize_range, normalize_ranges};
pub use types::{
    BiasStatistic, BoundValue, CorollaryQuery, MartingaleView, MeanKnownQuery, Sign, TheoremQuery, ThresholdSpec,
};
