//! Parsers for the compact argument forms: ranges, state specs and
//! observables.

use std::path::PathBuf;
use std::str::FromStr;

use nlwit_core::linalg::{kron, CMatrix, OperatorBasis};
use nlwit_core::loophole::GridRange;
use nlwit_core::states::{bell, rho_b, werner, Bell, DensityMatrix};
use nlwit_core::MatrixDocument;

use crate::error::{CliError, CliResult};

/// `lo,hi,steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeArg(pub GridRange);

impl FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [lo, hi, steps] = parts[..] else {
            return Err(format!("expected lo,hi,steps, got `{s}`"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("bad lower end `{lo}`"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("bad upper end `{hi}`"))?;
        let steps: usize = steps.parse().map_err(|_| format!("bad step count `{steps}`"))?;
        GridRange::new(lo, hi, steps).map(RangeArg).map_err(|e| e.to_string())
    }
}

/// `bell:phi+`, `werner:0.9`, `rho-b:3.5` or `file:PATH`.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Bell(Bell),
    Werner(f64),
    RhoB(f64),
    File(PathBuf),
}

impl FromStr for StateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:VALUE (bell:phi+, werner:P, rho-b:A, file:PATH), got `{s}`"))?;
        let number = |v: &str| v.parse::<f64>().map_err(|_| format!("bad number `{v}`"));
        match kind {
            "bell" => arg.parse().map(StateSpec::Bell),
            "werner" => number(arg).map(StateSpec::Werner),
            "rho-b" => number(arg).map(StateSpec::RhoB),
            "file" => Ok(StateSpec::File(PathBuf::from(arg))),
            other => Err(format!("unknown state kind `{other}`")),
        }
    }
}

impl StateSpec {
    pub fn build(&self) -> CliResult<DensityMatrix> {
        match self {
            StateSpec::Bell(b) => Ok(DensityMatrix::from_ket(&bell(*b))),
            StateSpec::Werner(p) => Ok(werner(*p)?),
            StateSpec::RhoB(a) => Ok(rho_b(*a)?),
            StateSpec::File(path) => load_state(path),
        }
    }
}

pub fn load_state(path: &std::path::Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let doc = MatrixDocument::from_json(&text)?;
    Ok(DensityMatrix::from_document(&doc)?)
}

/// Pauli string (`XX`, `ZI`, ...) for two qubits, or `i,j` for B_i ⊗ B_j in
/// the Pauli/Gell-Mann basis matching the state.
pub fn observable(spec: &str, dims: (usize, usize)) -> CliResult<CMatrix> {
    let bad = || {
        CliError::Usage(format!(
            "bad observable `{spec}` (Pauli string like XX, or basis indices i,j)"
        ))
    };
    let (i, j) = if let Some((a, b)) = spec.split_once(',') {
        let i = a.trim().parse::<usize>().map_err(|_| bad())?;
        let j = b.trim().parse::<usize>().map_err(|_| bad())?;
        (i, j)
    } else {
        if dims != (2, 2) {
            return Err(CliError::Usage(format!(
                "Pauli strings need a two-qubit state; use basis indices i,j for dims {dims:?}"
            )));
        }
        let idx = |c: char| match c.to_ascii_uppercase() {
            'I' => Some(0),
            'X' => Some(1),
            'Y' => Some(2),
            'Z' => Some(3),
            _ => None,
        };
        let chars: Vec<char> = spec.chars().collect();
        match chars[..] {
            [a, b] => (idx(a).ok_or_else(bad)?, idx(b).ok_or_else(bad)?),
            _ => return Err(bad()),
        }
    };
    let ba = OperatorBasis::for_dim(dims.0)?;
    let bb = OperatorBasis::for_dim(dims.1)?;
    if i >= ba.len() || j >= bb.len() {
        return Err(CliError::Usage(format!(
            "basis index out of range: ({i}, {j}) for {}x{} elements",
            ba.len(),
            bb.len()
        )));
    }
    Ok(kron(ba.element(i), bb.element(j)))
}
