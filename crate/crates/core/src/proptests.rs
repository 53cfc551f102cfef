//! Property tests across the modules.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::entanglement::{concurrence, makhlin_g1, separable_state};
use crate::gates::{gate, lmg_gate, LmgParams};
use crate::linalg::ComplexMatrix;
use crate::spin::{decompose, reconstruct, rotate_params, wigner_d, SpinLabel};
use crate::su3::{build_hamiltonian, decompose_hamiltonian, from_qubit_basis, to_qubit_basis};
use crate::testutil::{random_hermitian, random_local};

fn herm(seed: u64, dim: usize) -> ComplexMatrix {
    random_hermitian(&mut ChaCha8Rng::seed_from_u64(seed), dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expm_is_unitary(seed in any::<u64>(), dim in 2usize..=6, t in -10.0f64..10.0) {
        let u = herm(seed, dim).expm_hermitian(t).unwrap();
        prop_assert!(u.unitarity_residual() < 1e-12);
    }

    #[test]
    fn expm_group_property(seed in any::<u64>(), dim in 2usize..=6, s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let h = herm(seed, dim);
        let lhs = &h.expm_hermitian(s).unwrap() * &h.expm_hermitian(t).unwrap();
        let rhs = h.expm_hermitian(s + t).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn eigh_reconstructs(seed in any::<u64>(), dim in 2usize..=6) {
        let h = herm(seed, dim);
        let (vals, vecs) = h.eigh().unwrap();
        let d = ComplexMatrix::from_diag(&vals.iter().map(|&v| num_complex::Complex64::new(v, 0.0)).collect::<Vec<_>>());
        let back = &(&vecs * &d) * &vecs.adjoint();
        prop_assert!(back.max_abs_diff(&h) < 1e-12 * (1.0 + h.frobenius_norm()));
        prop_assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn tensor_round_trip(seed in any::<u64>(), two_j in 0u32..=5) {
        let spin = SpinLabel::from_two_j(two_j).unwrap();
        let h = herm(seed, spin.dim());
        let p = decompose(&h, spin).unwrap();
        prop_assert!(p.hermiticity_residual() < 1e-12);
        prop_assert!(reconstruct(&p).max_abs_diff(&h) < 1e-12);
    }

    #[test]
    fn su3_round_trip(seed in any::<u64>()) {
        let h = herm(seed, 3);
        let coeffs = decompose_hamiltonian(&h).unwrap();
        prop_assert!(build_hamiltonian(&coeffs).max_abs_diff(&h) < 1e-13);
    }

    #[test]
    fn qubit_embedding_round_trip(seed in any::<u64>(), s in -2.0f64..2.0) {
        let h = herm(seed, 3);
        let op4 = to_qubit_basis(&h, num_complex::Complex64::new(s, 0.0)).unwrap();
        let (back, singlet) = from_qubit_basis(&op4).unwrap();
        prop_assert!(back.max_abs_diff(&h) < 1e-14);
        prop_assert!((singlet.re - s).abs() < 1e-14);
    }

    #[test]
    fn wigner_d_composes(k in 0usize..=2, b1 in -3.0f64..3.0, b2 in -3.0f64..3.0) {
        let lhs = &wigner_d(k, b1).unwrap().to_matrix() * &wigner_d(k, b2).unwrap().to_matrix();
        let rhs = wigner_d(k, b1 + b2).unwrap().to_matrix();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }

    #[test]
    fn rotation_preserves_rank_weights(
        seed in any::<u64>(),
        two_j in 1u32..=2,
        a in -3.2f64..3.2, b in 0.0f64..3.2, g in -3.2f64..3.2,
    ) {
        let spin = SpinLabel::from_two_j(two_j).unwrap();
        let p = decompose(&herm(seed, spin.dim()), spin).unwrap();
        let r = rotate_params(&p, a, b, g).unwrap();
        for k in 0..=spin.max_rank() {
            prop_assert!((p.rank_weight(k) - r.rank_weight(k)).abs() < 1e-11 * (1.0 + p.rank_weight(k)));
        }
    }

    #[test]
    fn g1_is_locally_invariant(seed in any::<u64>(), k in 1usize..=8, th in -4.0f64..4.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = gate(k, th).unwrap().u4;
        let dressed = &(&random_local(&mut rng) * &u) * &random_local(&mut rng);
        let a = makhlin_g1(&u).unwrap().norm();
        let b = makhlin_g1(&dressed).unwrap().norm();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn g1_modulus_at_most_one(g1 in -3.0f64..3.0, g2 in -3.0f64..3.0, t in -3.0f64..3.0) {
        let u = lmg_gate(LmgParams::new(g1, g2, t)).unwrap().u4;
        prop_assert!(makhlin_g1(&u).unwrap().norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn symmetric_product_states_are_separable(alpha in -7.0f64..7.0, phi in -7.0f64..7.0) {
        let s = separable_state(alpha, phi);
        prop_assert!(concurrence(&s.vec4).unwrap() < 1e-14);
        prop_assert!((0.0..=std::f64::consts::PI).contains(&s.alpha));
    }

    #[test]
    fn concurrence_is_local_invariant(seed in any::<u64>(), alpha in 0.0f64..3.2, phi in 0.0f64..6.3, th in 0.0f64..3.2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = gate(4, th).unwrap().u4.apply(&separable_state(alpha, phi).vec4).unwrap();
        let moved = random_local(&mut rng).apply(&psi).unwrap();
        prop_assert!((concurrence(&psi).unwrap() - concurrence(&moved).unwrap()).abs() < 1e-12);
    }
}
