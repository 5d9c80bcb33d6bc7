use clap::Args;
use nlwit_core::linalg::min_eigenvalue;
use nlwit_core::loophole::Figure;
use nlwit_core::states::{ppt_min_eigenvalue, rho_b};
use nlwit_core::witness::{apply_extended, choi_map, eval_linear, eval_nonlinear};
use serde::Serialize;
use serde_json::json;

use crate::config::{csv_table, json_document, Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::parse::RangeArg;

#[derive(Debug, Args)]
pub struct DemoBoundArgs {
    /// Range of the ρ_B parameter as lo,hi,steps, inside [0, 5].
    #[arg(long, default_value = "0,5,21")]
    pub a: RangeArg,
}

#[derive(Debug, Serialize)]
struct Row {
    a: f64,
    ppt_min_eig: f64,
    map_min_eig: f64,
    linear_w: f64,
    nonlinear_f: f64,
}

pub fn run(args: &DemoBoundArgs, cfg: &RunConfig) -> CliResult<()> {
    let range = args.a.0;
    if range.lo < 0.0 || range.hi > 5.0 {
        return Err(CliError::Usage(format!(
            "a-range must lie in [0, 5], got [{}, {}]",
            range.lo, range.hi
        )));
    }
    let f = Figure::Bound.witness(cfg.convention)?;
    let choi = choi_map();
    let mut rows = Vec::with_capacity(range.steps);
    for a in range.points() {
        let rho = rho_b(a)?;
        let image = apply_extended(&choi, &rho)?;
        rows.push(Row {
            a,
            ppt_min_eig: ppt_min_eigenvalue(&rho),
            map_min_eig: min_eigenvalue(&(&image + &image.adjoint()).scale_real(0.5))?,
            linear_w: eval_linear(f.linear(), &rho)?,
            nonlinear_f: eval_nonlinear(&f, &rho)?,
        });
    }
    let meta = cfg
        .metadata("demo-bound")
        .with(
            "witness",
            "choi-map, phi = (|00>+|11>+|22>)/sqrt3, psi = (|01>+|10>+|12>+|21>)/2",
        )
        .with("s", f.s());
    let text = match cfg.format {
        Format::Json => json_document(&json!({ "meta": meta, "rows": rows })),
        Format::Csv => csv_table(&meta, &rows)?,
    };
    cfg.emit(&text)
}
