use clap::Args;
use nlwit_core::loophole::{certify_with_guard, CertifyMode, DetectorModel, Figure, MeasuredTriple};
use serde::Serialize;
use serde_json::json;

use crate::config::{csv_table, json_document, Format, RunConfig};
use crate::error::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// phi+ (two-qubit W_φ⁺) or bound (Choi-map qutrit witness).
    #[arg(long)]
    pub witness: Figure,
    /// Measured ⟨W⟩.
    #[arg(long, allow_hyphen_values = true)]
    pub wm: f64,
    /// Measured ⟨H⟩; required in nonlinear mode.
    #[arg(long, allow_hyphen_values = true)]
    pub hm: Option<f64>,
    /// Measured ⟨A⟩; required in nonlinear mode.
    #[arg(long, allow_hyphen_values = true)]
    pub am: Option<f64>,
    /// Lost-event efficiency η₋ in (0, 1].
    #[arg(long)]
    pub eta: f64,
    #[arg(long, default_value = "linear")]
    pub mode: CertifyMode,
    /// Subtracted from the threshold before the strict comparison.
    #[arg(long, default_value_t = 0.0)]
    pub guard: f64,
}

#[derive(Debug, Serialize)]
pub struct CertifyRow {
    pub verdict: String,
    pub threshold: f64,
    pub margin: f64,
    pub mode: String,
    pub witness: String,
    pub eta_minus: f64,
    pub w_m: f64,
    pub h_m: f64,
    pub a_m: f64,
    pub guard: f64,
    pub c00: f64,
    pub s: f64,
    pub c0h: f64,
    pub c0a: f64,
    pub constant_convention: String,
}

pub fn run(args: &CertifyArgs, cfg: &RunConfig) -> CliResult<()> {
    let (h_m, a_m) = match (args.mode, args.hm, args.am) {
        (CertifyMode::Nonlinear, None, _) | (CertifyMode::Nonlinear, _, None) => {
            return Err(CliError::Usage("nonlinear mode needs both --hm and --am".into()));
        }
        (_, h, a) => (h.unwrap_or(0.0), a.unwrap_or(0.0)),
    };
    let triple = MeasuredTriple::new(args.wm, h_m, a_m)?;
    let det = DetectorModel::new(args.eta)?;
    let constants = args.witness.constants(cfg.convention)?;
    let c = certify_with_guard(&triple, &constants, det, args.mode, args.guard)?;
    let row = CertifyRow {
        verdict: c.verdict.to_string(),
        threshold: c.threshold,
        margin: c.margin,
        mode: args.mode.to_string(),
        witness: args.witness.to_string(),
        eta_minus: args.eta,
        w_m: args.wm,
        h_m,
        a_m,
        guard: args.guard,
        c00: constants.c00,
        s: constants.s,
        c0h: constants.c0h,
        c0a: constants.c0a,
        constant_convention: cfg.convention.to_string(),
    };
    let meta = cfg.metadata("certify");
    let text = match cfg.format {
        Format::Json => json_document(&json!({ "meta": meta, "result": row })),
        Format::Csv => csv_table(&meta, &[row])?,
    };
    cfg.emit(&text)
}
