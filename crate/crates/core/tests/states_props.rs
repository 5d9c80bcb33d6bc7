use nlwit_core::linalg::{eigenvalues, min_eigenvalue};
use nlwit_core::states::{
    ppt_min_eigenvalue, random_product_state, rho_b, schmidt_weight, werner, DensityMatrix, StateSampler,
};
use nlwit_core::witness::{apply_extended, choi_map};
use proptest::prelude::*;

fn assert_state(rho: &DensityMatrix) {
    let m = rho.matrix();
    assert!(m.hermiticity_defect() <= 1e-12);
    assert!((m.trace().re - 1.0).abs() <= 1e-12);
    assert!(min_eigenvalue(m).unwrap() >= -1e-10);
}

#[test]
fn family_constructors_produce_states() {
    for k in 0..=20 {
        assert_state(&werner(k as f64 / 20.0).unwrap());
        assert_state(&rho_b(5.0 * k as f64 / 20.0).unwrap());
    }
}

#[test]
fn werner_ppt_min_eigenvalue_matches_closed_form_on_50_points() {
    for k in 0..50 {
        let p = k as f64 / 49.0;
        // ρ^{T_B} has eigenvalues (1+p)/4 (three times) and (1−3p)/4.
        let expected = ((1.0 - 3.0 * p) / 4.0).min((1.0 + p) / 4.0);
        assert!((ppt_min_eigenvalue(&werner(p).unwrap()) - expected).abs() <= 1e-10);
    }
}

fn bisect(mut lo: f64, mut hi: f64, mut right: impl FnMut(f64) -> bool) -> f64 {
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if right(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn rho_b_ppt_edge_at_four() {
    let a = bisect(3.5, 5.0, |a| ppt_min_eigenvalue(&rho_b(a).unwrap()) < -1e-10);
    assert!((a - 4.0).abs() <= 1e-6, "{a}");
}

#[test]
fn rho_b_lower_ppt_edge_at_one() {
    let a = bisect(0.0, 2.0, |a| ppt_min_eigenvalue(&rho_b(a).unwrap()) >= -1e-10);
    assert!((a - 1.0).abs() <= 1e-6, "{a}");
}

#[test]
fn rho_b_choi_edge_at_three() {
    let choi = choi_map();
    let a = bisect(2.0, 4.0, |a| {
        let m = apply_extended(&choi, &rho_b(a).unwrap()).unwrap();
        min_eigenvalue(&(&m + &m.adjoint()).scale_real(0.5)).unwrap() < -1e-10
    });
    assert!((a - 3.0).abs() <= 1e-6, "{a}");
}

#[test]
fn rho_b_choi_image_is_positive_at_two() {
    let m = apply_extended(&choi_map(), &rho_b(2.0).unwrap()).unwrap();
    assert!(min_eigenvalue(&(&m + &m.adjoint()).scale_real(0.5)).unwrap() >= -1e-12);
}

proptest! {
    #[test]
    fn random_two_qubit_states_have_at_most_one_negative_pt_eigenvalue(seed in any::<u64>(), rank in 1usize..=4) {
        let rho = StateSampler::new((2, 2), seed).mixed_state(rank);
        let ev = eigenvalues(&rho.partial_transpose()).unwrap();
        prop_assert!(ev.iter().filter(|&&l| l < -1e-12).count() <= 1);
    }

    #[test]
    fn sampled_states_satisfy_invariants(seed in any::<u64>(), rank in 1usize..=9) {
        let rho = StateSampler::new((3, 3), seed).mixed_state(rank);
        assert_state(&rho);
    }

    #[test]
    fn product_states_are_ppt(seed in any::<u64>()) {
        for dims in [(2, 2), (3, 3)] {
            let rho = random_product_state(dims, seed);
            prop_assert!(ppt_min_eigenvalue(&rho) >= -1e-10);
            prop_assert_eq!(rho.rank(1e-10), 1);
            prop_assert_eq!(&rho, &random_product_state(dims, seed));
        }
    }

    #[test]
    fn schmidt_weight_is_local_unitary_invariant(seed in any::<u64>()) {
        for dims in [(2, 2), (3, 3), (2, 3)] {
            let mut s = StateSampler::new(dims, seed);
            let psi = s.pure_ket();
            let (ua, ub) = (s.unitary(dims.0), s.unitary(dims.1));
            let u = nlwit_core::linalg::kron(&ua, &ub);
            let rotated = nlwit_core::states::Ket::normalized(dims, u.mul_vec(psi.amplitudes()).unwrap()).unwrap();
            prop_assert!((schmidt_weight(&psi) - schmidt_weight(&rotated)).abs() <= 1e-10);
            let w = schmidt_weight(&psi);
            prop_assert!(w >= 1.0 / dims.0.min(dims.1) as f64 - 1e-12 && w <= 1.0 + 1e-12);
        }
    }
}
