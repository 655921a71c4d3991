//! History-dependent processes with exactly known conditional means, seeded
//! Monte-Carlo tail estimates, and exact enumeration on short sequences.

mod binomial;
mod enumerate;
mod montecarlo;
mod process;
mod seed;
mod trajectory;

pub use binomial::{binom_cdf, binom_sf, binomial_band, ci_lower, ci_upper};
pub use enumerate::{enumerate_exact, enumerate_exact_many, EnumResult, MAX_ENUM_N};
pub use montecarlo::{estimate_tail, estimate_tail_many, TailEstimate, TailProbe, DEFAULT_LEVEL, SOUNDNESS_LEVEL};
pub use process::{History, Kernel, ProcessSpec};
pub use seed::{splitmix64, trial_rng, trial_seed};
pub use trajectory::{generate, violation_check, Trajectory};
