//! Local operator bases (identity + Pauli, identity + Gell-Mann) and the
//! expansion of bipartite operators over their tensor products.

use num_complex::Complex64;

use super::matrix::{kron, CMatrix, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::tolerance::STRUCTURAL;

/// Orthogonal Hermitian basis of d×d operators; element 0 is the identity.
///
/// Elements carry their conventional normalization: tr(σ_i²) = 2 for the
/// Pauli matrices, tr(λ_i²) = 2 for Gell-Mann, tr(I²) = d.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<CMatrix>,
    norms: Vec<f64>,
}

impl OperatorBasis {
    pub fn for_dim(d: usize) -> Result<Self> {
        match d {
            2 => Ok(Self::pauli()),
            3 => Ok(Self::gell_mann()),
            other => Err(Error::UnsupportedDimension(other)),
        }
    }

    /// σ₀ = I, σ₁ = X, σ₂ = Y, σ₃ = Z.
    pub fn pauli() -> Self {
        let elements = vec![
            CMatrix::identity(2),
            CMatrix::from_complex_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
            CMatrix::from_complex_rows(&[&[ZERO, -I], &[I, ZERO]]),
            CMatrix::from_complex_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        ];
        Self::from_elements(2, elements)
    }

    /// λ₀ = I₃ followed by the eight Gell-Mann matrices λ₁…λ₈.
    pub fn gell_mann() -> Self {
        let sym = |i: usize, j: usize| {
            let mut m = CMatrix::zeros(3, 3);
            m[(i, j)] = ONE;
            m[(j, i)] = ONE;
            m
        };
        let asym = |i: usize, j: usize| {
            let mut m = CMatrix::zeros(3, 3);
            m[(i, j)] = -I;
            m[(j, i)] = I;
            m
        };
        let r3 = 1.0 / 3f64.sqrt();
        let elements = vec![
            CMatrix::identity(3),
            sym(0, 1),
            asym(0, 1),
            CMatrix::diag_real(&[1.0, -1.0, 0.0]),
            sym(0, 2),
            asym(0, 2),
            sym(1, 2),
            asym(1, 2),
            CMatrix::diag_real(&[r3, r3, -2.0 * r3]),
        ];
        Self::from_elements(3, elements)
    }

    fn from_elements(dim: usize, elements: Vec<CMatrix>) -> Self {
        let norms = elements
            .iter()
            .map(|b| b.trace_product(b).expect("square basis element").re)
            .collect();
        Self { dim, elements, norms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &CMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    /// tr(B_i²).
    pub fn norm_sq(&self, i: usize) -> f64 {
        self.norms[i]
    }

    /// Coefficients of a d×d operator: c_i = tr(B_i X) / tr(B_i²).
    pub fn coefficients(&self, x: &CMatrix) -> Result<Vec<Complex64>> {
        if x.rows() != self.dim || x.cols() != self.dim {
            return Err(Error::dims(format!("{0}x{0}", self.dim), x.shape_string()));
        }
        self.elements
            .iter()
            .zip(&self.norms)
            .map(|(b, &n)| Ok(b.trace_product(x)? / n))
            .collect()
    }

    /// Σ c_i B_i.
    pub fn combine(&self, coeffs: &[Complex64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (b, &c) in self.elements.iter().zip(coeffs) {
            if c != ZERO {
                out = &out + &b.scale(c);
            }
        }
        out
    }
}

/// Real coefficient table C_ij of a Hermitian operator over B_i ⊗ B_j.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    dims: (usize, usize),
    coeffs: Vec<f64>,
}

impl Decomposition {
    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    /// C_ij with `i` indexing the first factor's basis.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        let n2 = self.dims.1 * self.dims.1;
        self.coeffs[i * n2 + j]
    }

    /// Identity coefficient C₀₀ = tr(m) / (d₁d₂).
    pub fn c00(&self) -> f64 {
        self.coeffs[0]
    }

    /// Row-major table, d₁² rows by d₂² columns.
    pub fn table(&self) -> &[f64] {
        &self.coeffs
    }

    /// Σ_ij C_ij B_i ⊗ B_j.
    pub fn reconstruct(&self) -> Result<CMatrix> {
        let (d1, d2) = self.dims;
        let ba = OperatorBasis::for_dim(d1)?;
        let bb = OperatorBasis::for_dim(d2)?;
        let mut out = CMatrix::zeros(d1 * d2, d1 * d2);
        for i in 0..ba.len() {
            for j in 0..bb.len() {
                let c = self.coeff(i, j);
                if c != 0.0 {
                    out = &out + &kron(ba.element(i), bb.element(j)).scale_real(c);
                }
            }
        }
        Ok(out)
    }
}

/// Expands a Hermitian operator on C^d₁ ⊗ C^d₂ (d ∈ {2, 3}) as
/// Σ C_ij B_i ⊗ B_j with C_ij = tr[m (B_i ⊗ B_j)] / (tr B_i² · tr B_j²).
pub fn decompose(m: &CMatrix, dims: (usize, usize)) -> Result<Decomposition> {
    let (d1, d2) = dims;
    let n = d1 * d2;
    if m.rows() != n || m.cols() != n {
        return Err(Error::dims(format!("{n}x{n}"), m.shape_string()));
    }
    m.check_hermitian(STRUCTURAL)?;
    let ba = OperatorBasis::for_dim(d1)?;
    let bb = OperatorBasis::for_dim(d2)?;
    let mut coeffs = Vec::with_capacity(ba.len() * bb.len());
    for i in 0..ba.len() {
        for j in 0..bb.len() {
            let b = kron(ba.element(i), bb.element(j));
            let c = m.trace_product(&b)? / (ba.norm_sq(i) * bb.norm_sq(j));
            coeffs.push(c.re);
        }
    }
    Ok(Decomposition { dims, coeffs })
}
