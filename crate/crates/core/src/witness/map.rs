use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, CMatrix, OperatorBasis};
use crate::states::{DensityMatrix, StateSampler};

/// Linear map on d×d operators, stored as its d²×d² matrix over the
/// orthonormalized Hermitian basis B̂_i = B_i / √tr(B_i²).
///
/// With an orthonormal basis the Hilbert–Schmidt adjoint is the conjugate
/// transpose of that matrix, so no adjoint is ever derived by hand.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveMap {
    name: String,
    dim: usize,
    action: CMatrix,
}

impl PositiveMap {
    /// Tabulates `f` on the basis. `f` must be linear; it is only ever
    /// evaluated on basis elements.
    pub fn from_action(name: impl Into<String>, dim: usize, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Self> {
        let basis = normalized_basis(dim)?;
        let n = basis.len();
        let mut action = CMatrix::zeros(n, n);
        for (l, bl) in basis.iter().enumerate() {
            let image = f(bl);
            if image.rows() != dim || image.cols() != dim {
                return Err(Error::dims(
                    format!("{dim}x{dim} image"),
                    format!("{}x{}", image.rows(), image.cols()),
                ));
            }
            for (k, bk) in basis.iter().enumerate() {
                action[(k, l)] = bk.trace_product(&image)?;
            }
        }
        Ok(Self {
            name: name.into(),
            dim,
            action,
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_action("identity", dim, |x| x.clone())
    }

    pub fn transpose(dim: usize) -> Result<Self> {
        Self::from_action("transpose", dim, |x| x.transpose())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The d²×d² operator-space matrix (row: output coefficient, column:
    /// input coefficient).
    pub fn operator_matrix(&self) -> &CMatrix {
        &self.action
    }

    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.dim || x.cols() != self.dim {
            return Err(Error::dims(
                format!("{0}x{0}", self.dim),
                format!("{}x{}", x.rows(), x.cols()),
            ));
        }
        let basis = normalized_basis(self.dim)?;
        let coeffs: Vec<Complex64> = basis.iter().map(|b| b.trace_product(x)).collect::<Result<_>>()?;
        let out = self.action.mul_vec(&coeffs)?;
        let mut y = CMatrix::zeros(self.dim, self.dim);
        for (b, c) in basis.iter().zip(out) {
            y = &y + &b.scale(c);
        }
        Ok(y)
    }

    /// Largest ‖M(X†) − M(X)†‖_F over `samples` random complex X.
    pub fn hermiticity_violation(&self, samples: usize, seed: u64) -> f64 {
        let mut sampler = StateSampler::new((self.dim, 1), seed);
        (0..samples)
            .map(|_| {
                let x = sampler.ginibre(self.dim, self.dim);
                let lhs = self.apply(&x.adjoint()).expect("square input");
                let rhs = self.apply(&x).expect("square input").adjoint();
                (&lhs - &rhs).frobenius_norm()
            })
            .fold(0.0, f64::max)
    }

    /// Smallest eigenvalue of M(|v⟩⟨v|) over `samples` Haar-random kets.
    /// A necessary condition for positivity, not a proof.
    pub fn positivity_spot_check(&self, samples: usize, seed: u64) -> f64 {
        let mut sampler = StateSampler::new((self.dim, 1), seed);
        (0..samples)
            .map(|_| {
                let v = sampler.haar_vector(self.dim);
                let image = self.apply(&CMatrix::outer(&v, &v)).expect("square input");
                min_eigenvalue(&image).unwrap_or(f64::NEG_INFINITY)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn normalized_basis(dim: usize) -> Result<Vec<CMatrix>> {
    let basis = OperatorBasis::for_dim(dim)?;
    Ok((0..basis.len())
        .map(|i| basis.element(i).scale_real(1.0 / basis.norm_sq(i).sqrt()))
        .collect())
}

/// Positive but not completely positive qutrit map
///
/// ```text
/// [a11 a12 a13]    [a11+a33  -a12     -a13   ]
/// [a21 a22 a23] -> [-a21     a22+a11  -a23   ]
/// [a31 a32 a33]    [-a31     -a32     a33+a22]
/// ```
pub fn choi_map() -> PositiveMap {
    PositiveMap::from_action("choi", 3, |x| {
        let mut y = x.scale_real(-1.0);
        for (i, j) in [(0, 2), (1, 0), (2, 1)] {
            y[(i, i)] = x[(i, i)] + x[(j, j)];
        }
        y
    })
    .expect("qutrit basis exists")
}

/// Hilbert–Schmidt adjoint: tr[adj(M)(Y) X] = tr[Y M(X)].
pub fn map_adjoint(m: &PositiveMap) -> PositiveMap {
    PositiveMap {
        name: format!("adj({})", m.name),
        dim: m.dim,
        action: m.action.adjoint(),
    }
}

/// (I ⊗ M) applied block-wise to an operator on C^d₁ ⊗ C^d₂.
pub fn apply_extended_matrix(map: &PositiveMap, m: &CMatrix, dims: (usize, usize)) -> Result<CMatrix> {
    let (d1, d2) = dims;
    if d2 != map.dim {
        return Err(Error::dims(format!("second factor of dimension {}", map.dim), d2));
    }
    let n = d1 * d2;
    if m.rows() != n || m.cols() != n {
        return Err(Error::dims(format!("{n}x{n}"), format!("{}x{}", m.rows(), m.cols())));
    }
    let mut out = CMatrix::zeros(n, n);
    let mut block = CMatrix::zeros(d2, d2);
    for bi in 0..d1 {
        for bj in 0..d1 {
            for r in 0..d2 {
                for c in 0..d2 {
                    block[(r, c)] = m[(bi * d2 + r, bj * d2 + c)];
                }
            }
            let image = map.apply(&block)?;
            for r in 0..d2 {
                for c in 0..d2 {
                    out[(bi * d2 + r, bj * d2 + c)] = image[(r, c)];
                }
            }
        }
    }
    Ok(out)
}

pub fn apply_extended(map: &PositiveMap, rho: &DensityMatrix) -> Result<CMatrix> {
    apply_extended_matrix(map, rho.matrix(), rho.dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, ONE, ZERO};

    fn close(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
        (a - b).frobenius_norm() <= tol
    }

    #[test]
    fn choi_map_scales_identity_by_two() {
        let y = choi_map().apply(&CMatrix::identity(3)).unwrap();
        assert!(close(&y, &CMatrix::identity(3).scale_real(2.0), 1e-14));
    }

    #[test]
    fn choi_map_on_first_projector() {
        let y = choi_map().apply(&CMatrix::diag_real(&[1.0, 0.0, 0.0])).unwrap();
        assert!(close(&y, &CMatrix::diag_real(&[1.0, 1.0, 0.0]), 1e-14));
    }

    #[test]
    fn choi_map_negates_off_diagonal_units() {
        let e12 = CMatrix::unit(3, 0, 1);
        let y = choi_map().apply(&e12).unwrap();
        assert!(close(&y, &e12.scale_real(-1.0), 1e-14));
    }

    #[test]
    fn choi_map_on_general_matrix() {
        let x = CMatrix::from_complex_rows(&[
            &[ONE, I * 2.0, ONE * 3.0],
            &[ONE * 4.0, ONE * 5.0, -I],
            &[ZERO, ONE * 7.0, ONE * 9.0],
        ]);
        let expected = CMatrix::from_complex_rows(&[
            &[ONE * 10.0, -I * 2.0, -ONE * 3.0],
            &[-ONE * 4.0, ONE * 6.0, I],
            &[ZERO, -ONE * 7.0, ONE * 14.0],
        ]);
        assert!(close(&choi_map().apply(&x).unwrap(), &expected, 1e-13));
    }

    #[test]
    fn identity_map_adjoint_is_identity() {
        let id = PositiveMap::identity(3).unwrap();
        let adj = map_adjoint(&id);
        assert!(close(adj.operator_matrix(), id.operator_matrix(), 1e-14));
    }

    #[test]
    fn choi_adjoint_on_diagonal_inputs() {
        // Pairing tr[Y A(X)] with diagonal Y only sees the diagonal of A(X):
        // y1(x11+x33) + y2(x22+x11) + y3(x33+x22).
        let adj = map_adjoint(&choi_map());
        let (y1, y2, y3) = (0.3, -1.1, 2.5);
        let got = adj.apply(&CMatrix::diag_real(&[y1, y2, y3])).unwrap();
        let expected = CMatrix::diag_real(&[y1 + y2, y2 + y3, y3 + y1]);
        assert!(close(&got, &expected, 1e-14));
    }

    #[test]
    fn extended_identity_is_identity() {
        let rho = crate::states::rho_b(3.5).unwrap();
        let out = apply_extended(&PositiveMap::identity(3).unwrap(), &rho).unwrap();
        assert!(close(&out, rho.matrix(), 1e-14));
    }

    #[test]
    fn extended_transpose_is_partial_transpose() {
        let rho = crate::states::rho_b(4.5).unwrap();
        let out = apply_extended(&PositiveMap::transpose(3).unwrap(), &rho).unwrap();
        assert!(close(&out, &rho.partial_transpose(), 1e-14));
    }

    #[test]
    fn extended_rejects_dimension_mismatch() {
        let rho = crate::states::werner(0.5).unwrap();
        assert!(matches!(
            apply_extended(&choi_map(), &rho),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn choi_map_is_hermiticity_preserving_and_positive_on_samples() {
        let m = choi_map();
        assert!(m.hermiticity_violation(100, 1) <= 1e-10);
        assert!(m.positivity_spot_check(500, 2) >= -1e-8);
    }
}
