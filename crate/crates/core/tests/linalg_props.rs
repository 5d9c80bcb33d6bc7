use nlwit_core::linalg::{
    decompose, hermitian_eig, hermitian_split, kron, partial_transpose, CMatrix, OperatorBasis, Subsystem,
};
use nlwit_core::states::StateSampler;
use nlwit_core::Complex64;
use proptest::prelude::*;

fn dims_strategy() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 2)), Just((3, 3)), Just((2, 3)), Just((3, 2))]
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn decomposition_round_trip_on_200_matrices_per_dims() {
    for (dims, seed) in [((2, 2), 11), ((3, 3), 12)] {
        let mut s = StateSampler::new(dims, seed);
        for _ in 0..200 {
            let m = s.hermitian(dims.0 * dims.1);
            let back = decompose(&m, dims).unwrap().reconstruct().unwrap();
            assert!((&back - &m).frobenius_norm() <= 1e-10);
        }
    }
}

proptest! {
    #[test]
    fn eigen_residuals_and_trace(seed in any::<u64>(), n in 1usize..=9) {
        let m = StateSampler::new((n, 1), seed).hermitian(n);
        let eig = hermitian_eig(&m).unwrap();
        for k in 0..n {
            let v = eig.vector(k);
            let mv = m.mul_vec(&v).unwrap();
            let r: Vec<Complex64> = mv.iter().zip(&v).map(|(a, b)| a - b * eig.values[k]).collect();
            prop_assert!(vec_norm(&r) <= 1e-10);
            prop_assert!((vec_norm(&v) - 1.0).abs() <= 1e-12);
        }
        let sum: f64 = eig.values.iter().sum();
        prop_assert!((sum - m.trace().re).abs() <= 1e-10);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn partial_transpose_preserves_trace_and_hermiticity(seed in any::<u64>(), dims in dims_strategy()) {
        let m = StateSampler::new(dims, seed).hermitian(dims.0 * dims.1);
        for sub in [Subsystem::A, Subsystem::B] {
            let t = partial_transpose(&m, dims, sub).unwrap();
            prop_assert!((t.trace() - m.trace()).norm() <= 1e-12);
            prop_assert!(t.hermiticity_defect() <= 1e-14);
        }
    }

    #[test]
    fn partial_transposes_compose_to_full_transpose(seed in any::<u64>(), dims in dims_strategy()) {
        let n = dims.0 * dims.1;
        let m = StateSampler::new(dims, seed).ginibre(n, n);
        let ab = partial_transpose(&partial_transpose(&m, dims, Subsystem::A).unwrap(), dims, Subsystem::B).unwrap();
        prop_assert_eq!(ab, m.transpose());
    }

    #[test]
    fn partial_transpose_is_an_involution(seed in any::<u64>(), dims in dims_strategy()) {
        let n = dims.0 * dims.1;
        let m = StateSampler::new(dims, seed).ginibre(n, n);
        let twice = partial_transpose(&partial_transpose(&m, dims, Subsystem::B).unwrap(), dims, Subsystem::B).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn hermitian_split_recomposes(seed in any::<u64>(), n in 1usize..=9) {
        let x = StateSampler::new((n, 1), seed).ginibre(n, n);
        let (h, a) = hermitian_split(&x).unwrap();
        prop_assert!(h.hermiticity_defect() <= 1e-15);
        prop_assert!(a.hermiticity_defect() <= 1e-15);
        let back = &h + &a.scale(Complex64::new(0.0, 1.0));
        prop_assert!((&back - &x).frobenius_norm() <= 1e-14 * (1.0 + x.frobenius_norm()));
    }

    #[test]
    fn decomposition_of_kron_products_factorizes(seed in any::<u64>()) {
        // For A ⊗ B, C_ij = a_i b_j with a, b the single-factor coefficients.
        let mut s = StateSampler::new((2, 2), seed);
        let (a, b) = (s.hermitian(2), s.hermitian(2));
        let d = decompose(&kron(&a, &b), (2, 2)).unwrap();
        let pauli = OperatorBasis::pauli();
        let ca = pauli.coefficients(&a).unwrap();
        let cb = pauli.coefficients(&b).unwrap();
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prop_assert!((d.coeff(i, j) - (x * y).re).abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn identity_has_only_the_identity_coefficient() {
    let d = decompose(&CMatrix::identity(9), (3, 3)).unwrap();
    assert!((d.c00() - 1.0).abs() < 1e-15);
    assert!(d.table().iter().skip(1).all(|c| c.abs() < 1e-15));
}
