use std::path::PathBuf;

use clap::{Args, Subcommand};
use nlwit_core::linalg::{eigenvalues, min_eigenvalue};
use nlwit_core::states::{ppt_min_eigenvalue, rho_b, werner, Bell, DensityMatrix};
use nlwit_core::witness::{apply_extended, choi_map};
use serde::Serialize;
use serde_json::json;

use crate::config::{csv_table, json_document, write_file, Format, RunConfig};
use crate::error::CliResult;
use crate::parse::load_state;

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(subcommand)]
    pub kind: StateKind,

    /// Also write the state as a JSON matrix document.
    #[arg(long, global = true)]
    pub save: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum StateKind {
    /// Two-qubit Bell state.
    Bell {
        #[arg(long, default_value = "phi+")]
        which: Bell,
    },
    /// p|ψ⁻⟩⟨ψ⁻| + (1 − p) I/4.
    Werner {
        #[arg(long)]
        p: f64,
    },
    /// Two-qutrit family, PPT for 1 ≤ a ≤ 4.
    RhoB {
        #[arg(long)]
        a: f64,
    },
    /// Load a JSON matrix document.
    File {
        #[arg(long)]
        path: PathBuf,
    },
}

#[derive(Debug, Serialize)]
struct Report {
    state: String,
    dims: String,
    trace: f64,
    min_eigenvalue: f64,
    rank: usize,
    ppt_min_eigenvalue: f64,
    ppt: bool,
    /// Smallest eigenvalue of (I ⊗ choi)(ρ); qutrit pairs only.
    #[serde(skip_serializing_if = "Option::is_none")]
    choi_min_eigenvalue: Option<f64>,
}

pub fn run(args: &StateArgs, cfg: &RunConfig) -> CliResult<()> {
    let (label, rho) = match &args.kind {
        StateKind::Bell { which } => (
            format!("bell:{which}"),
            DensityMatrix::from_ket(&nlwit_core::states::bell(*which)),
        ),
        StateKind::Werner { p } => (format!("werner:{p}"), werner(*p)?),
        StateKind::RhoB { a } => (format!("rho-b:{a}"), rho_b(*a)?),
        StateKind::File { path } => (format!("file:{}", path.display()), load_state(path)?),
    };
    let tol = cfg.tolerances.structural;
    let ppt_min = ppt_min_eigenvalue(&rho);
    let choi_min = if rho.dims().1 == 3 {
        let image = apply_extended(&choi_map(), &rho)?;
        Some(min_eigenvalue(&(&image + &image.adjoint()).scale_real(0.5))?)
    } else {
        None
    };
    let ev = eigenvalues(rho.matrix())?;
    let report = Report {
        state: label,
        dims: format!("{}x{}", rho.dims().0, rho.dims().1),
        trace: rho.matrix().trace().re,
        min_eigenvalue: ev[0],
        rank: rho.rank(tol),
        ppt_min_eigenvalue: ppt_min,
        ppt: ppt_min >= -tol,
        choi_min_eigenvalue: choi_min,
    };
    let doc = rho.to_document();
    if let Some(path) = &args.save {
        write_file(path, &doc.to_json())?;
    }
    let meta = cfg.metadata("state");
    let text = match cfg.format {
        Format::Json => json_document(&json!({ "meta": meta, "report": report, "state": doc })),
        Format::Csv => csv_table(&meta, &[report])?,
    };
    cfg.emit(&text)
}
