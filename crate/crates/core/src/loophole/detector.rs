//! Lost-event detector model and the thresholds that close the detection
//! loophole.
//!
//! With equal per-outlet losses and traceless observables, a measured
//! expectation relates to the ideal one by
//!
//! ```text
//! ⟨O⟩_m = C₀(1 − 1/η₋) + ⟨O⟩_t / η₋
//! ```
//!
//! where C₀ is the identity coefficient of O. Everything below follows from
//! inverting that relation for W, H and A.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::witness::WitnessConstants;

/// Detector with lost-event efficiency η₋ ∈ (0, 1]. Additional events are
/// not modelled (η₊ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorModel {
    eta_minus: f64,
}

impl DetectorModel {
    pub fn new(eta_minus: f64) -> Result<Self> {
        if !(eta_minus > 0.0 && eta_minus <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "eta_minus",
                value: eta_minus,
                reason: "lost-event efficiency must lie in (0, 1]",
            });
        }
        Ok(Self { eta_minus })
    }

    pub fn ideal() -> Self {
        Self { eta_minus: 1.0 }
    }

    pub fn eta_minus(&self) -> f64 {
        self.eta_minus
    }

    pub fn eta_plus(&self) -> f64 {
        1.0
    }

    /// 1 − 1/η₋, the factor multiplying every identity coefficient.
    fn loss_factor(&self) -> f64 {
        1.0 - 1.0 / self.eta_minus
    }
}

pub fn measured_from_true(true_val: f64, c0: f64, det: DetectorModel) -> f64 {
    c0 * det.loss_factor() + true_val / det.eta_minus
}

pub fn true_from_measured(measured: f64, c0: f64, det: DetectorModel) -> f64 {
    det.eta_minus * (measured - c0 * det.loss_factor())
}

/// ⟨W⟩_m must be strictly below C₀₀(1 − 1/η₋) to certify entanglement.
pub fn linear_threshold(c00: f64, det: DetectorModel) -> f64 {
    c00 * det.loss_factor()
}

/// Right-hand sides of the nonlinear loophole-closing condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearThreshold {
    /// Bound on the measured nonlinear value ⟨F⟩_m.
    pub on_f: f64,
    /// Same condition restated as a bound on the measured linear value
    /// ⟨W⟩_m, i.e. `on_f + (h_m² + a_m²)/s`.
    pub on_w: f64,
}

/// With k_H = C_0H(1 − 1/η₋) and k_A = C_0A(1 − 1/η₋):
///
/// ```text
/// ⟨F⟩_m < C₀₀(1 − 1/η₋) + (η₋/s)[(h_m − k_H)² + (a_m − k_A)²] − (1/s)(h_m² + a_m²)
/// ```
pub fn nonlinear_threshold(
    constants: &WitnessConstants,
    h_m: f64,
    a_m: f64,
    det: DetectorModel,
) -> Result<NonlinearThreshold> {
    let s = constants.s;
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "quadratic-term normalization must be positive",
        });
    }
    let eta = det.eta_minus;
    let k_h = constants.c0h * det.loss_factor();
    let k_a = constants.c0a * det.loss_factor();
    let shifted = (h_m * h_m + k_h * k_h - 2.0 * h_m * k_h) + (a_m * a_m + k_a * k_a - 2.0 * a_m * k_a);
    let on_w = constants.c00 * det.loss_factor() + eta / s * shifted;
    let on_f = on_w - (h_m * h_m + a_m * a_m) / s;
    Ok(NonlinearThreshold { on_f, on_w })
}

/// Measured ⟨W⟩, ⟨H⟩, ⟨A⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasuredTriple {
    pub w_m: f64,
    pub h_m: f64,
    pub a_m: f64,
}

impl MeasuredTriple {
    pub fn new(w_m: f64, h_m: f64, a_m: f64) -> Result<Self> {
        for (name, v) in [("w_m", w_m), ("h_m", h_m), ("a_m", a_m)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "measured values must be finite",
                });
            }
        }
        Ok(Self { w_m, h_m, a_m })
    }

    pub fn linear_only(w_m: f64) -> Self {
        Self {
            w_m,
            h_m: 0.0,
            a_m: 0.0,
        }
    }

    /// X_nl = (h_m² + a_m²)^½.
    pub fn x_nl(&self) -> f64 {
        self.h_m.hypot(self.a_m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertifyMode {
    #[default]
    Linear,
    Nonlinear,
}

impl CertifyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CertifyMode::Linear => "linear",
            CertifyMode::Nonlinear => "nonlinear",
        }
    }
}

impl fmt::Display for CertifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CertifyMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "linear" => Ok(CertifyMode::Linear),
            "nonlinear" => Ok(CertifyMode::Nonlinear),
            other => Err(format!("unknown mode `{other}` (linear, nonlinear)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Entangled => "Entangled",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub verdict: Verdict,
    /// Bound on ⟨W⟩_m after subtracting the guard band.
    pub threshold: f64,
    /// `threshold − w_m`; positive iff certified.
    pub margin: f64,
    pub mode: CertifyMode,
}

/// Strict-inequality decision with no guard band.
pub fn certify(
    triple: &MeasuredTriple,
    constants: &WitnessConstants,
    det: DetectorModel,
    mode: CertifyMode,
) -> Result<Certification> {
    certify_with_guard(triple, constants, det, mode, 0.0)
}

/// Both modes compare ⟨W⟩_m against a bound; the nonlinear condition on
/// ⟨F⟩_m is equivalent after moving the quadratic term across. `guard` is
/// subtracted from the bound.
pub fn certify_with_guard(
    triple: &MeasuredTriple,
    constants: &WitnessConstants,
    det: DetectorModel,
    mode: CertifyMode,
    guard: f64,
) -> Result<Certification> {
    if guard.is_nan() || guard < 0.0 {
        return Err(Error::InvalidParameter {
            name: "guard",
            value: guard,
            reason: "guard band must be nonnegative",
        });
    }
    let bound = match mode {
        CertifyMode::Linear => linear_threshold(constants.c00, det),
        CertifyMode::Nonlinear => nonlinear_threshold(constants, triple.h_m, triple.a_m, det)?.on_w,
    };
    let threshold = bound - guard;
    let verdict = if triple.w_m < threshold {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(Certification {
        verdict,
        threshold,
        margin: threshold - triple.w_m,
        mode,
    })
}
