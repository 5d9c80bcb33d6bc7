//! The two reference witnesses whose decision surfaces are tabulated by the
//! CLI.

use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::states::{bell, maximally_entangled, qutrit_probe, Bell};
use crate::witness::{
    choi_map, nonlinear_extend_with, witness_from_map, witness_from_ppt, NonlinearWitness, SConvention,
    WitnessConstants,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// W_{φ⁺} extended with ψ = φ⁻ (two qubits).
    PhiPlus,
    /// Choi-map witness W̄_φ for the maximally entangled qutrit pair,
    /// extended with ψ = ½(|01⟩ + |10⟩ + |12⟩ + |21⟩).
    Bound,
}

impl Figure {
    pub fn number(self) -> u8 {
        match self {
            Figure::PhiPlus => 1,
            Figure::Bound => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Figure::PhiPlus),
            2 => Some(Figure::Bound),
            _ => None,
        }
    }

    pub fn witness(self, convention: SConvention) -> Result<NonlinearWitness> {
        match self {
            Figure::PhiPlus => {
                let phi = bell(Bell::PhiPlus);
                nonlinear_extend_with(&witness_from_ppt(&phi), &phi, &bell(Bell::PhiMinus), convention)
            }
            Figure::Bound => {
                let phi = maximally_entangled(3);
                let w = witness_from_map(&choi_map(), &phi)?;
                nonlinear_extend_with(&w, &phi, &qutrit_probe(), convention)
            }
        }
    }

    pub fn constants(self, convention: SConvention) -> Result<WitnessConstants> {
        Ok(self.witness(convention)?.constants())
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::PhiPlus => "phi+",
            Figure::Bound => "bound",
        })
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" | "phi+" => Ok(Figure::PhiPlus),
            "2" | "bound" => Ok(Figure::Bound),
            other => Err(format!("unknown witness `{other}` (phi+, bound)")),
        }
    }
}
