use affine_tail::certify::{certify_grid, CertGridSpec};
use clap::Args;

use crate::output::{csv_table, json, num, Format};
use crate::{CliError, OutputOpts};

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = CertGridSpec::default().y_min)]
    pub y_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = CertGridSpec::default().y_max)]
    pub y_max: f64,
    #[arg(long, default_value_t = CertGridSpec::default().y_step)]
    pub y_step: f64,
    /// Extent of each row above |y|.
    #[arg(long, default_value_t = CertGridSpec::default().x_span)]
    pub x_span: f64,
    #[arg(long, default_value_t = CertGridSpec::default().x_step)]
    pub x_step: f64,
    /// Tolerance below zero accepted for every margin.
    #[arg(long, default_value_t = CertGridSpec::default().slack)]
    pub slack: f64,
    #[command(flatten)]
    pub out: OutputOpts,
}

/// Returns the report text and whether every check passed.
pub fn run(args: &CertifyArgs) -> Result<(String, bool), CliError> {
    let spec = CertGridSpec {
        y_min: args.y_min,
        y_max: args.y_max,
        y_step: args.y_step,
        x_span: args.x_span,
        x_step: args.x_step,
        slack: args.slack,
    };
    let report = certify_grid(&spec)?;
    let text = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    let id = serde_json::to_value(c.id).expect("id serializes");
                    vec![
                        id.as_str().unwrap_or_default().to_string(),
                        c.grid_size.to_string(),
                        num(c.min_margin),
                        num(c.worst_point[0]),
                        num(c.worst_point[1]),
                        num(c.worst_point[2]),
                        c.passed.to_string(),
                    ]
                })
                .collect();
            csv_table(
                &[
                    "check",
                    "grid_size",
                    "min_margin",
                    "worst_x",
                    "worst_y",
                    "worst_z",
                    "passed",
                ],
                &rows,
            )?
        }
    };
    Ok((text, report.passed))
}
