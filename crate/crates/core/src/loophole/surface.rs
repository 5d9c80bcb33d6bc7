//! Decision surfaces: the boundary value of ⟨W⟩_m over a grid of detector
//! efficiencies and nonlinear readouts. Points above the surface are
//! inconclusive; points strictly below certify entanglement.

use serde::{Deserialize, Serialize};

use super::detector::{linear_threshold, nonlinear_threshold, CertifyMode, DetectorModel};
use crate::error::{Error, Result};
use crate::witness::WitnessConstants;

/// `steps` evenly spaced points from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        let r = Self { lo, hi, steps };
        r.validate("range")?;
        Ok(r)
    }

    fn validate(&self, name: &'static str) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::NonFinite);
        }
        if self.steps == 0 {
            return Err(Error::InvalidParameter {
                name,
                value: 0.0,
                reason: "a grid needs at least one step",
            });
        }
        if self.lo > self.hi {
            return Err(Error::InvalidParameter {
                name,
                value: self.lo,
                reason: "lower end exceeds upper end",
            });
        }
        if self.steps == 1 && self.lo != self.hi {
            return Err(Error::InvalidParameter {
                name,
                value: self.hi,
                reason: "a single-step grid must have lo == hi",
            });
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.lo];
        }
        let span = self.hi - self.lo;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.hi
                } else {
                    self.lo + span * k as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub eta_minus: f64,
    pub x_nl: f64,
    pub boundary_w_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentRow {
    pub eta_minus: f64,
    pub h_m: f64,
    pub a_m: f64,
    pub boundary_w_m: f64,
}

/// Boundary over (η₋, X_nl) with X_nl² split equally between ⟨H⟩²_m and
/// ⟨A⟩²_m. Exact only when c0h = c0a = 0; otherwise use
/// [`surface_grid_components`].
pub fn surface_grid(
    constants: &WitnessConstants,
    eta: GridRange,
    xnl: GridRange,
    mode: CertifyMode,
) -> Result<Vec<SurfaceRow>> {
    eta.validate("eta")?;
    xnl.validate("x_nl")?;
    if xnl.lo < 0.0 {
        return Err(Error::InvalidParameter {
            name: "x_nl",
            value: xnl.lo,
            reason: "X_nl is a norm and cannot be negative",
        });
    }
    let mut rows = Vec::with_capacity(eta.steps * xnl.steps);
    for e in eta.points() {
        let det = DetectorModel::new(e)?;
        for x in xnl.points() {
            let component = x / std::f64::consts::SQRT_2;
            let boundary_w_m = boundary(constants, component, component, det, mode)?;
            rows.push(SurfaceRow {
                eta_minus: e,
                x_nl: x,
                boundary_w_m,
            });
        }
    }
    Ok(rows)
}

/// Boundary over (η₋, ⟨H⟩_m, ⟨A⟩_m) for witnesses with nonzero k_H or k_A.
pub fn surface_grid_components(
    constants: &WitnessConstants,
    eta: GridRange,
    h: GridRange,
    a: GridRange,
    mode: CertifyMode,
) -> Result<Vec<ComponentRow>> {
    eta.validate("eta")?;
    h.validate("h_m")?;
    a.validate("a_m")?;
    let mut rows = Vec::with_capacity(eta.steps * h.steps * a.steps);
    for e in eta.points() {
        let det = DetectorModel::new(e)?;
        for h_m in h.points() {
            for a_m in a.points() {
                rows.push(ComponentRow {
                    eta_minus: e,
                    h_m,
                    a_m,
                    boundary_w_m: boundary(constants, h_m, a_m, det, mode)?,
                });
            }
        }
    }
    Ok(rows)
}

fn boundary(c: &WitnessConstants, h_m: f64, a_m: f64, det: DetectorModel, mode: CertifyMode) -> Result<f64> {
    match mode {
        CertifyMode::Linear => Ok(linear_threshold(c.c00, det)),
        CertifyMode::Nonlinear => Ok(nonlinear_threshold(c, h_m, a_m, det)?.on_w),
    }
}
