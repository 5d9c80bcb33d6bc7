use clap::Args;
use nlwit_core::loophole::{measured_from_true, simulate_clicks_with, DetectorModel, LossModel};
use serde::Serialize;
use serde_json::json;

use crate::config::{csv_table, json_document, Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::parse::{observable, StateSpec};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// bell:phi+, werner:P, rho-b:A or file:PATH.
    #[arg(long)]
    pub state: StateSpec,
    /// Pauli string such as XX, or basis indices i,j.
    #[arg(long)]
    pub observable: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    #[arg(long, default_value = "equal-count")]
    pub loss: LossModel,
}

#[derive(Debug, Serialize)]
struct Summary {
    state: String,
    observable: String,
    shots: u64,
    loss_model: String,
    nominal_eta: f64,
    realized_eta: f64,
    true_value: f64,
    predicted_measured: f64,
    empirical_mean: f64,
    standard_error: f64,
    z_score: f64,
    physical: bool,
    true_counts: String,
    detected_counts: String,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

pub fn run(args: &SimulateArgs, cfg: &RunConfig) -> CliResult<()> {
    if args.shots == 0 {
        return Err(CliError::Usage("--shots must be positive".into()));
    }
    let rho = args.state.build()?;
    let s = observable(&args.observable, rho.dims())?;
    let det = DetectorModel::new(args.eta)?;
    let out = simulate_clicks_with(&rho, &s, args.shots, det, cfg.seed, args.loss)?;
    let true_value = s.trace_product(rho.matrix())?.re;
    // The 1/η₋ law holds for the equal-count model only; Bernoulli losses
    // leave the mean unbiased.
    let predicted = match args.loss {
        LossModel::Bernoulli => true_value,
        _ => measured_from_true(true_value, 0.0, det),
    };
    let summary = Summary {
        state: state_label(&args.state),
        observable: args.observable.clone(),
        shots: args.shots,
        loss_model: args.loss.to_string(),
        nominal_eta: out.nominal_eta,
        realized_eta: out.realized_eta,
        true_value,
        predicted_measured: predicted,
        empirical_mean: out.measured_mean,
        standard_error: out.standard_error,
        z_score: (out.measured_mean - predicted) / out.standard_error,
        physical: out.record.is_physical(),
        true_counts: join(&out.record.true_counts),
        detected_counts: join(&out.record.detected_counts),
    };
    let meta = cfg.metadata("simulate");
    let text = match cfg.format {
        Format::Json => json_document(&json!({ "meta": meta, "summary": summary, "record": out.record })),
        Format::Csv => csv_table(&meta, &[summary])?,
    };
    cfg.emit(&text)
}

fn state_label(s: &StateSpec) -> String {
    match s {
        StateSpec::Bell(b) => format!("bell:{b}"),
        StateSpec::Werner(p) => format!("werner:{p}"),
        StateSpec::RhoB(a) => format!("rho-b:{a}"),
        StateSpec::File(p) => format!("file:{}", p.display()),
    }
}
