//! JSON matrix document shared by states and witnesses.
//!
//! ```json
//! {"dims": [2, 2], "entries": [[0.5, 0.0], [0.0, 0.0], ...]}
//! ```
//!
//! `entries` holds the (d₁d₂)² matrix elements row-major as `[re, im]`.
//! Witness documents also carry a `provenance` object.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::states::DensityMatrix;
use crate::witness::{LinearWitness, Provenance};
use crate::Complex64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub dims: [usize; 2],
    pub entries: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl MatrixDocument {
    pub fn from_matrix(dims: (usize, usize), m: &CMatrix) -> Self {
        Self {
            dims: [dims.0, dims.1],
            entries: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
            provenance: None,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dims[0], self.dims[1])
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.dims[0] * self.dims[1];
        if n == 0 {
            return Err(Error::Document("dims must be positive".into()));
        }
        if self.entries.len() != n * n {
            return Err(Error::Document(format!(
                "dims {:?} need {} entries, found {}",
                self.dims,
                n * n,
                self.entries.len()
            )));
        }
        let data = self.entries.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        CMatrix::from_vec(n, n, data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document contains only finite numbers")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))
    }
}

impl DensityMatrix {
    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument::from_matrix(self.dims(), self.matrix())
    }

    /// Validates the density-matrix invariants on load.
    pub fn from_document(doc: &MatrixDocument) -> Result<Self> {
        DensityMatrix::new(doc.dims(), doc.to_matrix()?)
    }
}

impl LinearWitness {
    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument {
            provenance: Some(self.provenance().clone()),
            ..MatrixDocument::from_matrix(self.dims(), self.matrix())
        }
    }

    /// A missing provenance tag loads as [`Provenance::External`].
    pub fn from_document(doc: &MatrixDocument) -> Result<Self> {
        let provenance = doc.provenance.clone().unwrap_or(Provenance::External);
        LinearWitness::new(doc.dims(), doc.to_matrix()?, provenance)
    }
}
