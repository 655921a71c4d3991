use std::fs;
use std::path::PathBuf;

use affine_tail::fmt::ser_f64;
use affine_tail::simulate::{estimate_tail, generate, trial_seed, ProcessSpec, TailEstimate, DEFAULT_LEVEL};
use affine_tail::Error;
use clap::Args;
use serde::Serialize;

use crate::bound::ThresholdOut;
use crate::output::{csv_table, num, Format};
use crate::params::{evaluate, Ineq, Params};
use crate::{CliError, OutputOpts};

pub const SCHEMA: &str = "affine-tail.simulate/1";

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Process in text form, e.g. `iid_bernoulli(p=0.5)`.
    #[arg(long, conflicts_with = "process_file", required_unless_present = "process_file")]
    pub process: Option<String>,
    /// TOML file with a `kind` key and the process parameters.
    #[arg(long)]
    pub process_file: Option<PathBuf>,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, value_enum)]
    pub ineq: Ineq,
    #[command(flatten)]
    pub params: Params,
    /// Evaluate the bound at this sequence length instead of `--n`
    /// (a deliberately mismatched bound exercises the soundness detector).
    #[arg(long)]
    pub bound_n: Option<u64>,
    /// One-sided confidence level of the reported upper limit.
    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    pub level: f64,
    /// Master seed; per-trial seeds are derived from it.
    #[arg(long, env = "AFFINE_TAIL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Also write the first trial's trajectory as CSV (index, x, mu).
    #[arg(long)]
    pub trajectory: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Serialize)]
struct BoundOut {
    ineq: &'static str,
    n: u64,
    #[serde(serialize_with = "ser_f64")]
    rhs: f64,
    #[serde(serialize_with = "ser_f64")]
    log_rhs: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    schema: &'static str,
    process: String,
    n: u64,
    #[serde(flatten)]
    estimate: TailEstimate,
    bound: BoundOut,
    threshold: ThresholdOut,
    master_seed: u64,
}

fn load_process(args: &SimulateArgs) -> Result<ProcessSpec, Error> {
    let spec = match (&args.process, &args.process_file) {
        (Some(text), _) => text.parse()?,
        (None, Some(path)) => {
            let text =
                fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            let spec: ProcessSpec =
                toml::from_str(&text).map_err(|e| Error::Usage(format!("cannot parse {}: {e}", path.display())))?;
            spec.validate()?;
            spec
        }
        (None, None) => return Err(Error::Usage("--process or --process-file is required".into())),
    };
    Ok(spec)
}

/// Returns the report text and whether the bound survived.
pub fn run(args: &SimulateArgs) -> Result<(String, bool), CliError> {
    let spec = load_process(args)?;
    if args.n == 0 || args.trials == 0 {
        return Err(Error::Usage("--n and --trials must be positive".into()).into());
    }
    let thr = evaluate(args.ineq, args.n, &args.params)?.threshold.ok_or_else(|| {
        Error::Usage(format!(
            "--ineq {} has no threshold to simulate against",
            args.ineq.name()
        ))
    })?;
    let bound_n = args.bound_n.unwrap_or(args.n);
    let bound = evaluate(args.ineq, bound_n, &args.params)?.bound;

    let est = estimate_tail(&spec, args.n, args.trials, &thr, &bound, args.seed, args.level)?;

    if let Some(path) = &args.trajectory {
        let t = generate(&spec, args.n, trial_seed(args.seed, 0))?;
        let file = fs::File::create(path).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        t.write_csv(file)?;
    }

    let report = Report {
        schema: SCHEMA,
        process: spec.to_string(),
        n: args.n,
        estimate: est,
        bound: BoundOut {
            ineq: args.ineq.name(),
            n: bound_n,
            rhs: bound.rhs,
            log_rhs: bound.log_rhs,
        },
        threshold: ThresholdOut::from(&thr),
        master_seed: args.seed,
    };
    let text = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => crate::output::json(&report)?,
        Format::Csv => {
            let e = &report.estimate;
            csv_table(
                &[
                    "process",
                    "n",
                    "trials",
                    "violations",
                    "freq",
                    "ci_level",
                    "ci_upper",
                    "soundness_level",
                    "ci_lower",
                    "ineq",
                    "bound_n",
                    "rhs",
                    "log_rhs",
                    "sound",
                    "master_seed",
                ],
                &[vec![
                    report.process.clone(),
                    report.n.to_string(),
                    e.trials.to_string(),
                    e.violations.to_string(),
                    num(e.freq),
                    num(e.ci_level),
                    num(e.ci_upper),
                    num(e.soundness_level),
                    num(e.ci_lower),
                    report.bound.ineq.to_string(),
                    bound_n.to_string(),
                    num(bound.rhs),
                    num(bound.log_rhs),
                    e.sound.to_string(),
                    args.seed.to_string(),
                ]],
            )?
        }
    };
    Ok((text, est.sound))
}
