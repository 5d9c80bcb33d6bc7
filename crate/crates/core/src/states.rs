//! Pure and mixed bipartite states used throughout the crate, together with
//! the structural checks that classify them (PPT test, Schmidt weight).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, kron, kron_vec, min_eigenvalue, partial_transpose, singular_values, CMatrix, Subsystem, ZERO,
};
use crate::tolerance::{KET_NORM, STRUCTURAL};

/// Unit vector in C^d₁ ⊗ C^d₂. Amplitude index of |ij⟩ is `i·d₂ + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    dims: (usize, usize),
    amps: Vec<Complex64>,
}

impl Ket {
    pub fn new(dims: (usize, usize), amps: Vec<Complex64>) -> Result<Self> {
        check_len(dims, amps.len())?;
        let norm = norm(&amps);
        if (norm - 1.0).abs() > KET_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { dims, amps })
    }

    /// Normalizes `amps`; fails on the zero vector.
    pub fn normalized(dims: (usize, usize), amps: Vec<Complex64>) -> Result<Self> {
        check_len(dims, amps.len())?;
        let n = norm(&amps);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self {
            dims,
            amps: amps.into_iter().map(|z| z / n).collect(),
        })
    }

    /// Equal-weight superposition of the listed |ij⟩ terms with real signs.
    pub fn from_terms(dims: (usize, usize), terms: &[(usize, usize, f64)]) -> Result<Self> {
        let mut amps = vec![ZERO; dims.0 * dims.1];
        for &(i, j, c) in terms {
            if i >= dims.0 || j >= dims.1 {
                return Err(Error::dims(format!("{dims:?}"), format!("|{i}{j}⟩")));
            }
            amps[i * dims.1 + j] += Complex64::new(c, 0.0);
        }
        Self::normalized(dims, amps)
    }

    pub fn basis(dims: (usize, usize), i: usize, j: usize) -> Result<Self> {
        Self::from_terms(dims, &[(i, j, 1.0)])
    }

    pub fn product(a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        Self::normalized((a.len(), b.len()), kron_vec(a, b))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// |self⟩⟨self|.
    pub fn projector(&self) -> CMatrix {
        CMatrix::outer(&self.amps, &self.amps)
    }

    /// The d₁×d₂ matrix ψ_ij whose singular values are the Schmidt coefficients.
    pub fn amplitude_matrix(&self) -> CMatrix {
        CMatrix::from_vec(self.dims.0, self.dims.1, self.amps.clone()).expect("length checked at construction")
    }

    pub fn schmidt_coefficients(&self) -> Vec<f64> {
        singular_values(&self.amplitude_matrix())
    }
}

fn check_len(dims: (usize, usize), len: usize) -> Result<()> {
    if dims.0 == 0 || dims.1 == 0 || dims.0 * dims.1 != len {
        return Err(Error::dims(format!("{} amplitudes", dims.0 * dims.1), len));
    }
    Ok(())
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// The four two-qubit Bell states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl FromStr for Bell {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "phi+" | "phi-plus" => Ok(Bell::PhiPlus),
            "phi-" | "phi-minus" => Ok(Bell::PhiMinus),
            "psi+" | "psi-plus" => Ok(Bell::PsiPlus),
            "psi-" | "psi-minus" => Ok(Bell::PsiMinus),
            other => Err(format!("unknown Bell state `{other}` (phi+, phi-, psi+, psi-)")),
        }
    }
}

impl fmt::Display for Bell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bell::PhiPlus => "phi+",
            Bell::PhiMinus => "phi-",
            Bell::PsiPlus => "psi+",
            Bell::PsiMinus => "psi-",
        })
    }
}

pub fn bell(which: Bell) -> Ket {
    let terms: [(usize, usize, f64); 2] = match which {
        Bell::PhiPlus => [(0, 0, 1.0), (1, 1, 1.0)],
        Bell::PhiMinus => [(0, 0, 1.0), (1, 1, -1.0)],
        Bell::PsiPlus => [(0, 1, 1.0), (1, 0, 1.0)],
        Bell::PsiMinus => [(0, 1, 1.0), (1, 0, -1.0)],
    };
    Ket::from_terms((2, 2), &terms).expect("valid two-qubit terms")
}

/// (1/√d) Σ_i |ii⟩.
pub fn maximally_entangled(d: usize) -> Ket {
    let terms: Vec<_> = (0..d).map(|i| (i, i, 1.0)).collect();
    Ket::from_terms((d, d), &terms).expect("valid diagonal terms")
}

/// ½(|01⟩ + |10⟩ + |12⟩ + |21⟩), the fixed vector paired with the qutrit
/// witness in its nonlinear extension.
pub fn qutrit_probe() -> Ket {
    Ket::from_terms((3, 3), &[(0, 1, 1.0), (1, 0, 1.0), (1, 2, 1.0), (2, 1, 1.0)]).expect("valid qutrit terms")
}

/// Hermitian, unit-trace, positive semidefinite operator on C^d₁ ⊗ C^d₂.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: (usize, usize),
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(dims: (usize, usize), matrix: CMatrix) -> Result<Self> {
        let n = dims.0 * dims.1;
        if n == 0 || matrix.rows() != n || matrix.cols() != n {
            return Err(Error::dims(
                format!("{n}x{n}"),
                format!("{}x{}", matrix.rows(), matrix.cols()),
            ));
        }
        let defect = matrix.hermiticity_defect();
        if defect > STRUCTURAL {
            return Err(Error::NotDensityMatrix(format!("Hermiticity defect {defect:e}")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STRUCTURAL || tr.im.abs() > STRUCTURAL {
            return Err(Error::NotDensityMatrix(format!("trace {tr}")));
        }
        let min = min_eigenvalue(&matrix)?;
        if min < -STRUCTURAL {
            return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { dims, matrix })
    }

    pub fn from_ket(ket: &Ket) -> Self {
        Self {
            dims: ket.dims(),
            matrix: ket.projector(),
        }
    }

    /// Convex combination Σ w_k ρ_k. Weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::NotDensityMatrix("empty mixture".into()))?;
        let dims = first.dims;
        let n = dims.0 * dims.1;
        let mut acc = CMatrix::zeros(n, n);
        for &(w, rho) in parts {
            if w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "weight",
                    value: w,
                    reason: "mixture weights must be nonnegative",
                });
            }
            if rho.dims != dims {
                return Err(Error::dims(format!("{dims:?}"), format!("{:?}", rho.dims)));
            }
            acc = &acc + &rho.matrix.scale_real(w);
        }
        Self::new(dims, acc)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn partial_transpose(&self) -> CMatrix {
        partial_transpose(&self.matrix, self.dims, Subsystem::B).expect("dims checked at construction")
    }

    /// Conjugation by U_A ⊗ U_B.
    pub fn local_rotate(&self, ua: &CMatrix, ub: &CMatrix) -> Result<Self> {
        if ua.rows() != self.dims.0 || ub.rows() != self.dims.1 {
            return Err(Error::dims(
                format!("{:?}", self.dims),
                format!("({}, {})", ua.rows(), ub.rows()),
            ));
        }
        let u = kron(ua, ub);
        let m = &(&u * &self.matrix) * &u.adjoint();
        Self::new(self.dims, m)
    }

    /// Numerical rank: eigenvalues above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        hermitian_eig(&self.matrix)
            .expect("density matrices are Hermitian")
            .values
            .iter()
            .filter(|&&x| x > tol)
            .count()
    }
}

/// ρ_p = p|ψ⁻⟩⟨ψ⁻| + (1 − p) I/4.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "Werner weight must lie in [0, 1]",
        });
    }
    let singlet = bell(Bell::PsiMinus).projector().scale_real(p);
    let noise = CMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    DensityMatrix::new((2, 2), &singlet + &noise)
}

/// Two-qutrit family (2/7)|ψ̃⟩⟨ψ̃| + (a/7)σ₊ + ((5 − a)/7)σ₋ with
/// σ₊ = ⅓(|01⟩⟨01| + |12⟩⟨12| + |20⟩⟨20|) and
/// σ₋ = ⅓(|10⟩⟨10| + |21⟩⟨21| + |02⟩⟨02|).
///
/// Separable for 2 ≤ a ≤ 3, PPT entangled for 3 < a ≤ 4, NPPT for a > 4.
pub fn rho_b(a: f64) -> Result<DensityMatrix> {
    if !(0.0..=5.0).contains(&a) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            reason: "family parameter must lie in [0, 5]",
        });
    }
    let mut m = maximally_entangled(3).projector().scale_real(2.0 / 7.0);
    let plus = a / 21.0;
    let minus = (5.0 - a) / 21.0;
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        m[(3 * i + j, 3 * i + j)] += plus;
    }
    for (i, j) in [(1, 0), (2, 1), (0, 2)] {
        m[(3 * i + j, 3 * i + j)] += minus;
    }
    DensityMatrix::new((3, 3), m)
}

/// Smallest eigenvalue of ρ^{T_B}; negative means NPPT.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> f64 {
    min_eigenvalue(&rho.partial_transpose()).expect("partial transpose of a Hermitian matrix")
}

/// Square of the largest Schmidt coefficient of a pure bipartite state.
pub fn schmidt_weight(psi: &Ket) -> f64 {
    let s = psi.schmidt_coefficients()[0];
    s * s
}

/// Largest squared amplitude in the computational basis, max_ij |ψ_ij|².
pub fn largest_component_weight(psi: &Ket) -> f64 {
    psi.amplitudes().iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
}

/// Seeded source of random states and unitaries.
///
/// Local kets are Haar distributed (normalized complex Gaussian vectors).
#[derive(Debug, Clone)]
pub struct StateSampler {
    dims: (usize, usize),
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(dims: (usize, usize), seed: u64) -> Self {
        Self {
            dims,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    fn gaussian(&mut self) -> Complex64 {
        let re: f64 = StandardNormal.sample(&mut self.rng);
        let im: f64 = StandardNormal.sample(&mut self.rng);
        Complex64::new(re, im)
    }

    /// Matrix of i.i.d. standard complex Gaussian entries.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> CMatrix {
        let data = (0..rows * cols).map(|_| self.gaussian()).collect();
        CMatrix::from_vec(rows, cols, data).expect("finite Gaussian entries")
    }

    /// Random Hermitian matrix (G + G†)/2.
    pub fn hermitian(&mut self, d: usize) -> CMatrix {
        let g = self.ginibre(d, d);
        (&g + &g.adjoint()).scale_real(0.5)
    }

    /// Haar-random unit vector in C^d.
    pub fn haar_vector(&mut self, d: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..d).map(|_| self.gaussian()).collect();
            let n = norm(&v);
            if n > 1e-12 {
                return v.into_iter().map(|z| z / n).collect();
            }
        }
    }

    /// |a⟩ ⊗ |b⟩ with Haar-random local factors.
    pub fn product_ket(&mut self) -> Ket {
        let a = self.haar_vector(self.dims.0);
        let b = self.haar_vector(self.dims.1);
        Ket::product(&a, &b).expect("nonzero factors")
    }

    /// |a⟩⟨a| ⊗ |b⟩⟨b|.
    pub fn product_state(&mut self) -> DensityMatrix {
        DensityMatrix::from_ket(&self.product_ket())
    }

    /// Haar-random pure state on the full space.
    pub fn pure_ket(&mut self) -> Ket {
        let d = self.dims.0 * self.dims.1;
        Ket::new(self.dims, self.haar_vector(d)).expect("normalized by construction")
    }

    /// G G† / tr(G G†) for a d×k complex Gaussian G (rank ≤ k).
    pub fn mixed_state(&mut self, rank: usize) -> DensityMatrix {
        let d = self.dims.0 * self.dims.1;
        let k = rank.clamp(1, d);
        let g = self.ginibre(d, k);
        let w = &g * &g.adjoint();
        let tr = w.trace().re;
        let m = w.scale_real(1.0 / tr);
        // Hermitian up to round-off; symmetrize exactly.
        let m = (&m + &m.adjoint()).scale_real(0.5);
        DensityMatrix::new(self.dims, m).expect("Wishart matrices are states")
    }

    /// Haar-random d×d unitary (Gram–Schmidt on Gaussian columns).
    pub fn unitary(&mut self, d: usize) -> CMatrix {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
        while cols.len() < d {
            let mut v: Vec<Complex64> = (0..d).map(|_| self.gaussian()).collect();
            for u in &cols {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
            let n = norm(&v);
            if n > 1e-8 {
                cols.push(v.into_iter().map(|z| z / n).collect());
            }
        }
        let mut u = CMatrix::zeros(d, d);
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                u[(i, j)] = z;
            }
        }
        u
    }
}

/// Deterministic single draw of a random product state.
pub fn random_product_state(dims: (usize, usize), seed: u64) -> DensityMatrix {
    StateSampler::new(dims, seed).product_state()
}

/// The computational-basis projector |i⟩⟨i| ⊗ |j⟩⟨j|.
pub fn basis_state(dims: (usize, usize), i: usize, j: usize) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_ket(&Ket::basis(dims, i, j)?))
}
