use affine_tail::bounds::invert_epsilon;
use affine_tail::fmt::ser_f64;
use clap::Args;
use serde::Serialize;

use crate::output::{csv_table, json, num, Format};
use crate::params::{family, Ineq, Params};
use crate::{CliError, OutputOpts};

pub const SCHEMA: &str = "affine-tail.invert/1";

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[arg(long, value_enum)]
    pub ineq: Ineq,
    #[arg(long)]
    pub n: u64,
    /// Probability the bound should reach, in (0, 1].
    #[arg(long)]
    pub target: f64,
    #[command(flatten)]
    pub params: Params,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Serialize)]
struct Report {
    schema: &'static str,
    ineq: &'static str,
    n: u64,
    #[serde(serialize_with = "ser_f64")]
    target: f64,
    #[serde(serialize_with = "ser_f64")]
    epsilon: f64,
    #[serde(serialize_with = "ser_f64")]
    rhs: f64,
    #[serde(serialize_with = "ser_f64")]
    log_rhs: f64,
}

pub fn run(args: &InvertArgs) -> Result<String, CliError> {
    let fam = family(args.ineq, args.n, &args.params)?;
    let epsilon = invert_epsilon(&fam, args.target)?;
    let check = fam.eval(epsilon)?;
    let report = Report {
        schema: SCHEMA,
        ineq: args.ineq.name(),
        n: args.n,
        target: args.target,
        epsilon,
        rhs: check.rhs,
        log_rhs: check.log_rhs,
    };
    match args.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&report),
        Format::Csv => csv_table(
            &["ineq", "n", "target", "epsilon", "rhs", "log_rhs"],
            &[vec![
                report.ineq.to_string(),
                report.n.to_string(),
                num(report.target),
                num(report.epsilon),
                num(report.rhs),
                num(report.log_rhs),
            ]],
        ),
    }
}
