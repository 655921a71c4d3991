use affine_tail::bounds::{baseline_rhs, chernoff_mult_equiv_rhs, cor3_rhs, rs13_rhs, BaselineKind};
use affine_tail::fmt::ser_f64;
use affine_tail::{BoundValue, Error, MeanKnownQuery, Sign};
use clap::Args;
use serde::Serialize;

use crate::output::{csv_table, json, num, Format};
use crate::{CliError, OutputOpts};

pub const SCHEMA: &str = "affine-tail.compare/1";

/// Compares the known-mean bound with the classical ones on an ε grid.
#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub n: u64,
    /// Average of the expected values; every variable is taken to have this mean.
    #[arg(long)]
    pub p: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Sign,
    /// Explicit ε values, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["eps_min", "eps_max", "eps_step"])]
    pub epsilons: Option<Vec<f64>>,
    #[arg(long, requires_all = ["eps_max", "eps_step"])]
    pub eps_min: Option<f64>,
    #[arg(long)]
    pub eps_max: Option<f64>,
    #[arg(long)]
    pub eps_step: Option<f64>,
    #[command(flatten)]
    pub out: OutputOpts,
}

#[derive(Debug, Serialize)]
struct Row {
    ineq: &'static str,
    #[serde(serialize_with = "ser_f64")]
    epsilon: f64,
    #[serde(serialize_with = "ser_f64")]
    rhs: f64,
    #[serde(serialize_with = "ser_f64")]
    log_rhs: f64,
    vacuous: bool,
}

#[derive(Debug, Serialize)]
struct Report {
    schema: &'static str,
    n: u64,
    #[serde(serialize_with = "ser_f64")]
    p: f64,
    s: String,
    rows: Vec<Row>,
}

fn grid(args: &CompareArgs) -> Result<Vec<f64>, Error> {
    let eps = match (&args.epsilons, args.eps_min, args.eps_max, args.eps_step) {
        (Some(list), ..) => list.clone(),
        (None, Some(lo), Some(hi), Some(step)) => {
            if !(step > 0.0) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::Usage("--eps-step must be positive and the range finite".into()));
            }
            let count = ((hi - lo) / step + 1e-9).floor();
            if count < 0.0 {
                Vec::new()
            } else {
                (0..=count as u64).map(|k| lo + k as f64 * step).collect()
            }
        }
        _ => return Err(Error::Usage("give --epsilons or --eps-min/--eps-max/--eps-step".into())),
    };
    if eps.is_empty() {
        return Err(Error::Usage("the ε grid is empty".into()));
    }
    if let Some(bad) = eps.iter().find(|e| !(**e >= 0.0) || !e.is_finite()) {
        return Err(Error::Usage(format!(
            "ε values must be finite and nonnegative, got {bad}"
        )));
    }
    Ok(eps)
}

fn rows_at(n: u64, p: f64, s: Sign, eps: f64, means: &[f64]) -> Result<Vec<Row>, Error> {
    let variance = p * (1.0 - p);
    let mut out: Vec<(&'static str, BoundValue)> = vec![
        ("cor3", cor3_rhs(&MeanKnownQuery::new(n, p, eps, s)?)),
        ("rs13", rs13_rhs(means, eps, s)?),
        ("azuma", baseline_rhs(BaselineKind::Azuma, n, eps, None)?),
    ];
    for (name, kind) in [
        ("bernstein", BaselineKind::Bernstein),
        ("bennett", BaselineKind::Bennett),
    ] {
        if let Ok(b) = baseline_rhs(kind, n, eps, Some(variance)) {
            out.push((name, b));
        }
    }
    // the multiplicative form only exists for sε < √n p
    if let Ok(b) = chernoff_mult_equiv_rhs(n, p, eps, s) {
        out.push(("chernoff_mult", b));
    }
    Ok(out
        .into_iter()
        .map(|(ineq, b)| Row {
            ineq,
            epsilon: eps,
            rhs: b.rhs,
            log_rhs: b.log_rhs,
            vacuous: b.vacuous,
        })
        .collect())
}

pub fn run(args: &CompareArgs) -> Result<String, CliError> {
    if args.n == 0 {
        return Err(Error::Usage("--n must be a positive integer".into()).into());
    }
    if !(0.0..=1.0).contains(&args.p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {}", args.p)).into());
    }
    let eps = grid(args)?;
    // the rs13 bound depends on the means only through their average of c(μ, s)
    let means = [args.p];
    let mut rows = Vec::new();
    for &e in &eps {
        rows.extend(rows_at(args.n, args.p, args.s, e, &means)?);
    }
    match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.ineq.to_string(),
                        num(r.epsilon),
                        num(r.rhs),
                        num(r.log_rhs),
                        r.vacuous.to_string(),
                    ]
                })
                .collect();
            csv_table(&["ineq", "epsilon", "rhs", "log_rhs", "vacuous"], &cells)
        }
        Format::Json => json(&Report {
            schema: SCHEMA,
            n: args.n,
            p: args.p,
            s: args.s.to_string(),
            rows,
        }),
    }
}
