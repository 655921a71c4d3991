use affine_tail::fmt::{ser_f64, ser_opt_f64};
use affine_tail::{BiasStatistic, Sign, ThresholdSpec};
use clap::Args;
use serde::Serialize;

use crate::output::{csv_table, json, num, opt_num, Format};
use crate::params::{evaluate, Ineq, Params};
use crate::{CliError, OutputOpts};

pub const SCHEMA: &str = "affine-tail.bound/1";

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub ineq: Ineq,
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub params: Params,
    /// Bias statistic at which to realize the threshold (Δ, or Δ' for cor2).
    #[arg(long, allow_hyphen_values = true)]
    pub bias: Option<f64>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Serialize)]
pub struct ThresholdOut {
    #[serde(serialize_with = "ser_f64")]
    pub base: f64,
    #[serde(serialize_with = "ser_f64")]
    pub slope: f64,
    #[serde(serialize_with = "ser_f64")]
    pub scale: f64,
    pub side: String,
    pub statistic: BiasStatistic,
}

impl From<&ThresholdSpec> for ThresholdOut {
    fn from(t: &ThresholdSpec) -> Self {
        Self {
            base: t.base,
            slope: t.slope,
            scale: t.scale,
            side: t.side.to_string(),
            statistic: t.statistic,
        }
    }
}

#[derive(Debug, Serialize)]
struct BoundRecord {
    schema: &'static str,
    ineq: &'static str,
    n: u64,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    variance: Option<f64>,
    threshold: Option<ThresholdOut>,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    bias: Option<f64>,
    #[serde(serialize_with = "ser_opt_f64", skip_serializing_if = "Option::is_none")]
    threshold_value: Option<f64>,
    #[serde(serialize_with = "ser_f64")]
    rhs: f64,
    #[serde(serialize_with = "ser_f64")]
    log_rhs: f64,
    vacuous: bool,
    event_impossible: bool,
    warnings: Vec<String>,
}

const CSV_HEADER: [&str; 19] = [
    "ineq",
    "n",
    "a",
    "b",
    "epsilon",
    "delta",
    "s",
    "p",
    "variance",
    "threshold_base",
    "threshold_slope",
    "threshold_scale",
    "bias",
    "threshold_value",
    "rhs",
    "log_rhs",
    "vacuous",
    "event_impossible",
    "warnings",
];

pub fn run(args: &BoundArgs) -> Result<String, CliError> {
    let p = &args.params;
    let eval = evaluate(args.ineq, args.n, p)?;
    let mut warnings = Vec::new();
    if let Some(t) = &eval.threshold {
        warnings.extend(t.warnings());
    }
    if eval.bound.vacuous {
        warnings.push("bound is vacuous (rhs >= 1)".to_string());
    }
    if eval.bound.event_impossible {
        warnings.push("the bounded event cannot occur for these parameters".to_string());
    }
    let threshold_value = match (&eval.threshold, args.bias) {
        (Some(t), Some(d)) => Some(t.at_delta(d)),
        _ => None,
    };
    let rec = BoundRecord {
        schema: SCHEMA,
        ineq: args.ineq.name(),
        n: args.n,
        a: p.a,
        b: p.b,
        epsilon: p.epsilon,
        delta: p.delta,
        s: p.s.map(|s: Sign| s.to_string()),
        p: p.p,
        variance: p.variance,
        threshold: eval.threshold.as_ref().map(ThresholdOut::from),
        bias: args.bias,
        threshold_value,
        rhs: eval.bound.rhs,
        log_rhs: eval.bound.log_rhs,
        vacuous: eval.bound.vacuous,
        event_impossible: eval.bound.event_impossible,
        warnings,
    };
    match args.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&rec),
        Format::Csv => {
            let t = eval.threshold.as_ref();
            let row = vec![
                rec.ineq.to_string(),
                rec.n.to_string(),
                opt_num(rec.a),
                opt_num(rec.b),
                opt_num(rec.epsilon),
                opt_num(rec.delta),
                rec.s.clone().unwrap_or_default(),
                opt_num(rec.p),
                opt_num(rec.variance),
                opt_num(t.map(|t| t.base)),
                opt_num(t.map(|t| t.slope)),
                opt_num(t.map(|t| t.scale)),
                opt_num(rec.bias),
                opt_num(rec.threshold_value),
                num(rec.rhs),
                num(rec.log_rhs),
                rec.vacuous.to_string(),
                rec.event_impossible.to_string(),
                rec.warnings.join("; "),
            ];
            csv_table(&CSV_HEADER, &[row])
        }
    }
}
