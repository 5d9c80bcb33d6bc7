//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real Jacobi rotation to the resulting
//! real 2×2 block. For n ≤ 9 a handful of sweeps reach machine precision.

use num_complex::Complex64;

use super::matrix::{CMatrix, ZERO};
use crate::error::Result;
use crate::tolerance::{JACOBI_OFF_DIAGONAL, STRUCTURAL};

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
///
/// `values` are ascending; column `k` of `vectors` belongs to `values[k]` and
/// has its largest-magnitude component real and positive.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }
}

pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEigen> {
    m.check_hermitian(STRUCTURAL)?;
    let n = m.rows();
    // Work on the exactly Hermitian part.
    let mut a = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = CMatrix::identity(n);
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= JACOBI_OFF_DIAGONAL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    let mut vectors = CMatrix::zeros(n, n);
    let values = order.iter().map(|&k| diag[k]).collect();
    for (col, &k) in order.iter().enumerate() {
        let mut vec = v.column(k);
        fix_phase(&mut vec);
        for (row, z) in vec.into_iter().enumerate() {
            vectors[(row, col)] = z;
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Ascending eigenvalues only.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eig(m)?.values)
}

pub fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    Ok(hermitian_eig(m)?.min())
}

/// Singular values in descending order, `min(rows, cols)` of them.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let gram = if m.rows() <= m.cols() {
        m * &m.adjoint()
    } else {
        &m.adjoint() * m
    };
    let mut s: Vec<f64> = hermitian_eig(&gram)
        .expect("a Gram matrix is Hermitian")
        .values
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    s.reverse();
    s
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // 2×2 block of the unitary, acting on columns p, q.
    let vpp = Complex64::new(c, 0.0);
    let vpq = Complex64::new(s, 0.0);
    let vqp = -phase.conj() * s;
    let vqq = phase.conj() * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * vpp + vkq * vqp;
        v[(k, q)] = vkp * vpq + vkq * vqq;
    }
}

/// Rotates a vector so its largest-magnitude component is real positive.
fn fix_phase(vec: &mut [Complex64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, z) in vec.iter().enumerate() {
        // Near-ties resolve to the lower index so that round-off cannot
        // flip the choice between equal-magnitude components.
        let mag = z.norm();
        if mag > best_mag * (1.0 + 1e-9) {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag <= 0.0 {
        return;
    }
    let rot = vec[best].conj() / best_mag;
    for z in vec.iter_mut() {
        *z *= rot;
    }
    vec[best] = Complex64::new(vec[best].re, 0.0);
}
