use serde::{Deserialize, Serialize};

use super::map::{apply_extended_matrix, map_adjoint, PositiveMap};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, partial_transpose, CMatrix, Subsystem};
use crate::states::{DensityMatrix, Ket};
use crate::tolerance::STRUCTURAL;

/// How a linear witness was built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    /// |φ⟩⟨φ|^{T_B}.
    PptEigenvector,
    /// (I ⊗ M)⁺ |φ⟩⟨φ| for the named map M.
    MapAdjoint { map: String },
    /// Loaded from a file or built by hand.
    External,
}

/// Hermitian operator with tr(Wσ) ≥ 0 on separable σ.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearWitness {
    dims: (usize, usize),
    matrix: CMatrix,
    provenance: Provenance,
}

impl LinearWitness {
    /// Wraps an arbitrary Hermitian operator. Nothing checks the witness
    /// property; see [`separable_minimum`](super::separable_minimum).
    pub fn new(dims: (usize, usize), matrix: CMatrix, provenance: Provenance) -> Result<Self> {
        let n = dims.0 * dims.1;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::dims(
                format!("{n}x{n}"),
                format!("{}x{}", matrix.rows(), matrix.cols()),
            ));
        }
        matrix.check_hermitian(STRUCTURAL)?;
        Ok(Self {
            dims,
            matrix,
            provenance,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// C₀₀ = tr(W)/(d₁d₂), the identity coefficient in any orthogonal
    /// product basis whose first element is the identity.
    pub fn c00(&self) -> f64 {
        self.matrix.trace().re / (self.dims.0 * self.dims.1) as f64
    }

    /// ⟨v|W|v⟩ for a pure state.
    pub fn expectation_pure(&self, v: &Ket) -> Result<f64> {
        if v.dims() != self.dims {
            return Err(Error::dims(format!("{:?}", self.dims), format!("{:?}", v.dims())));
        }
        Ok(self.matrix.expectation(v.amplitudes())?.re)
    }
}

/// W_φ = |φ⟩⟨φ|^{T_B}.
pub fn witness_from_ppt(phi: &Ket) -> LinearWitness {
    let m = partial_transpose(&phi.projector(), phi.dims(), Subsystem::B).expect("ket dims are consistent");
    LinearWitness {
        dims: phi.dims(),
        matrix: m,
        provenance: Provenance::PptEigenvector,
    }
}

/// W̄_φ = (I ⊗ M)⁺ |φ⟩⟨φ|, not normalized.
pub fn witness_from_map(map: &PositiveMap, phi: &Ket) -> Result<LinearWitness> {
    let adj = map_adjoint(map);
    let m = apply_extended_matrix(&adj, &phi.projector(), phi.dims())?;
    // The operator-space round trip leaves ~1e-16 anti-Hermitian noise.
    let m = (&m + &m.adjoint()).scale_real(0.5);
    Ok(LinearWitness {
        dims: phi.dims(),
        matrix: m,
        provenance: Provenance::MapAdjoint {
            map: map.name().to_string(),
        },
    })
}

/// tr(Wρ).
pub fn eval_linear(w: &LinearWitness, rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != w.dims {
        return Err(Error::dims(format!("{:?}", w.dims), format!("{:?}", rho.dims())));
    }
    Ok(w.matrix.trace_product(rho.matrix())?.re)
}

/// Most negative eigenpair of a Hermitian operator on C^d₁ ⊗ C^d₂, if any
/// eigenvalue is below `-tol`. Ties go to the solver's first eigenvector.
pub fn negative_eigenvector(m: &CMatrix, dims: (usize, usize), tol: f64) -> Result<Option<(f64, Ket)>> {
    let eig = hermitian_eig(m)?;
    if eig.min() >= -tol {
        return Ok(None);
    }
    let ket = Ket::normalized(dims, eig.vector(0))?;
    Ok(Some((eig.min(), ket)))
}

/// W_φ built from the negative eigenvector of ρ^{T_B}; `None` for PPT states.
pub fn ppt_witness_for(rho: &DensityMatrix) -> Result<Option<LinearWitness>> {
    Ok(negative_eigenvector(&rho.partial_transpose(), rho.dims(), STRUCTURAL)?.map(|(_, phi)| witness_from_ppt(&phi)))
}

/// W̄_φ built from the negative eigenvector of (I ⊗ M)(ρ); `None` when the
/// map does not reveal entanglement.
pub fn map_witness_for(map: &PositiveMap, rho: &DensityMatrix) -> Result<Option<LinearWitness>> {
    let image = apply_extended_matrix(map, rho.matrix(), rho.dims())?;
    let image = (&image + &image.adjoint()).scale_real(0.5);
    match negative_eigenvector(&image, rho.dims(), STRUCTURAL)? {
        Some((_, phi)) => Ok(Some(witness_from_map(map, &phi)?)),
        None => Ok(None),
    }
}
