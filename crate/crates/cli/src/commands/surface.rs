use clap::Args;
use nlwit_core::loophole::{surface_grid, CertifyMode, Figure, GridRange};
use serde::Serialize;
use serde_json::json;

use crate::config::{csv_table, json_document, Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::parse::RangeArg;

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// 1: W_φ⁺ with ψ = φ⁻. 2: Choi-map qutrit witness.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub figure: u8,
    /// η₋ grid as lo,hi,steps.
    #[arg(long, default_value = "0.05,1,20")]
    pub eta: RangeArg,
    /// X_nl grid as lo,hi,steps.
    #[arg(long, default_value = "0,1,21")]
    pub xnl: RangeArg,
    #[arg(long, default_value = "nonlinear")]
    pub mode: CertifyMode,
}

#[derive(Debug, Serialize)]
struct Row {
    eta_minus: f64,
    x_nl: f64,
    boundary_w_m: f64,
    mode: String,
    constant_convention: String,
}

pub fn run(args: &SurfaceArgs, cfg: &RunConfig) -> CliResult<()> {
    let figure = Figure::from_number(args.figure).ok_or_else(|| CliError::Usage("figure must be 1 or 2".into()))?;
    let constants = figure.constants(cfg.convention)?;
    if constants.c0h.abs() > cfg.tolerances.structural || constants.c0a.abs() > cfg.tolerances.structural {
        return Err(CliError::Usage(
            "witness has nonzero C_0H/C_0A; X_nl alone does not fix the boundary".into(),
        ));
    }
    let eta: GridRange = args.eta.0;
    let rows: Vec<Row> = surface_grid(&constants, eta, args.xnl.0, args.mode)?
        .into_iter()
        .map(|r| Row {
            eta_minus: r.eta_minus,
            x_nl: r.x_nl,
            boundary_w_m: r.boundary_w_m,
            mode: args.mode.to_string(),
            constant_convention: cfg.convention.to_string(),
        })
        .collect();
    let meta = cfg
        .metadata("surface")
        .with("figure", args.figure)
        .with("witness", figure)
        .with("c00", constants.c00)
        .with("s", constants.s)
        .with("c0h", constants.c0h)
        .with("c0a", constants.c0a);
    let text = match cfg.format {
        Format::Json => json_document(&json!({ "meta": meta, "rows": rows })),
        Format::Csv => csv_table(&meta, &rows)?,
    };
    cfg.emit(&text)
}
