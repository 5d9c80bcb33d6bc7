use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::linear::{eval_linear, LinearWitness};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_split, partial_transpose, CMatrix, Subsystem};
use crate::states::{largest_component_weight, schmidt_weight, DensityMatrix, Ket};

/// Which normalization s(ψ) to use in the quadratic term.
///
/// `Schmidt` is the square of the largest Schmidt coefficient. `PaperFigure`
/// is the largest squared computational-basis amplitude, which gives the
/// reference qutrit surface (prefactor 4 instead of 2). The two agree for the
/// two-qubit witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SConvention {
    #[default]
    Schmidt,
    PaperFigure,
}

impl SConvention {
    pub fn weight(self, psi: &Ket) -> f64 {
        match self {
            SConvention::Schmidt => schmidt_weight(psi),
            SConvention::PaperFigure => largest_component_weight(psi),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SConvention::Schmidt => "schmidt",
            SConvention::PaperFigure => "paper-figure",
        }
    }
}

impl fmt::Display for SConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SConvention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "schmidt" => Ok(SConvention::Schmidt),
            "paper-figure" | "paper" => Ok(SConvention::PaperFigure),
            other => Err(format!("unknown s-convention `{other}` (schmidt, paper-figure)")),
        }
    }
}

/// The four numbers the loophole analysis needs from a witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessConstants {
    /// Identity coefficient of the linear witness.
    pub c00: f64,
    /// Normalization s(ψ) of the quadratic term.
    pub s: f64,
    /// tr(H)/(d₁d₂).
    pub c0h: f64,
    /// tr(A)/(d₁d₂).
    pub c0a: f64,
}

/// Ideal expectation values ⟨W⟩, ⟨H⟩, ⟨A⟩ in a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Readout {
    pub w: f64,
    pub h: f64,
    pub a: f64,
}

/// F(ρ) = ⟨W⟩ − (1/s)(⟨H⟩² + ⟨A⟩²), where X^{T_B} = H + iA and X = |φ⟩⟨ψ|.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearWitness {
    linear: LinearWitness,
    x: CMatrix,
    h: CMatrix,
    a: CMatrix,
    s: f64,
    c0h: f64,
    c0a: f64,
    convention: SConvention,
}

impl NonlinearWitness {
    pub fn linear(&self) -> &LinearWitness {
        &self.linear
    }

    /// X = |φ⟩⟨ψ| before partial transposition.
    pub fn x(&self) -> &CMatrix {
        &self.x
    }

    pub fn h(&self) -> &CMatrix {
        &self.h
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn c0h(&self) -> f64 {
        self.c0h
    }

    pub fn c0a(&self) -> f64 {
        self.c0a
    }

    pub fn convention(&self) -> SConvention {
        self.convention
    }

    pub fn constants(&self) -> WitnessConstants {
        WitnessConstants {
            c00: self.linear.c00(),
            s: self.s,
            c0h: self.c0h,
            c0a: self.c0a,
        }
    }

    pub fn readout(&self, rho: &DensityMatrix) -> Result<Readout> {
        let w = eval_linear(&self.linear, rho)?;
        let h = self.h.trace_product(rho.matrix())?.re;
        let a = self.a.trace_product(rho.matrix())?.re;
        Ok(Readout { w, h, a })
    }

    /// F evaluated on a pure state, without forming |v⟩⟨v|.
    pub fn eval_pure(&self, v: &Ket) -> Result<f64> {
        let w = self.linear.expectation_pure(v)?;
        let h = self.h.expectation(v.amplitudes())?.re;
        let a = self.a.expectation(v.amplitudes())?.re;
        Ok(w - (h * h + a * a) / self.s)
    }
}

/// Builds F from a linear witness, its vector φ, and a fixed vector ψ,
/// using the Schmidt weight for s(ψ).
pub fn nonlinear_extend(w: &LinearWitness, phi: &Ket, psi: &Ket) -> Result<NonlinearWitness> {
    nonlinear_extend_with(w, phi, psi, SConvention::Schmidt)
}

pub fn nonlinear_extend_with(
    w: &LinearWitness,
    phi: &Ket,
    psi: &Ket,
    convention: SConvention,
) -> Result<NonlinearWitness> {
    let dims = w.dims();
    for k in [phi, psi] {
        if k.dims() != dims {
            return Err(Error::dims(format!("{dims:?}"), format!("{:?}", k.dims())));
        }
    }
    let s = convention.weight(psi);
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "quadratic-term normalization must be positive",
        });
    }
    let x = CMatrix::outer(phi.amplitudes(), psi.amplitudes());
    let xt = partial_transpose(&x, dims, Subsystem::B)?;
    let (h, a) = hermitian_split(&xt)?;
    let n = (dims.0 * dims.1) as f64;
    let c0h = h.trace().re / n;
    let c0a = a.trace().re / n;
    Ok(NonlinearWitness {
        linear: w.clone(),
        x,
        h,
        a,
        s,
        c0h,
        c0a,
        convention,
    })
}

pub fn eval_nonlinear(f: &NonlinearWitness, rho: &DensityMatrix) -> Result<f64> {
    let r = f.readout(rho)?;
    Ok(r.w - (r.h * r.h + r.a * r.a) / f.s)
}
