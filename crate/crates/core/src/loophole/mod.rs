//! Lost-event detectors: measured-value model, certification thresholds,
//! decision surfaces and click simulation.

mod detector;
mod figures;
mod simulate;
mod surface;

pub use detector::{
    certify, certify_with_guard, linear_threshold, measured_from_true, nonlinear_threshold, true_from_measured,
    Certification, CertifyMode, DetectorModel, MeasuredTriple, NonlinearThreshold, Verdict,
};
pub use figures::Figure;
pub use simulate::{simulate_clicks, simulate_clicks_with, ClickRecord, LossModel, SimulationOutcome};
pub use surface::{surface_grid, surface_grid_components, ComponentRow, GridRange, SurfaceRow};
