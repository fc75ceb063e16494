mod common;

use inducedmap_core::discord::{has_vqd, pinching_defect, DiscordStatus};
use inducedmap_core::states::{assemble, SeparableEnsemble};
use inducedmap_core::{random, tensor, ComplexMatrix, C64};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

/// Smallest pinching defect over a grid of qubit measurement bases.
fn brute_force_defect(rho: &ComplexMatrix, de: usize) -> f64 {
    let steps = 90;
    let mut best = f64::INFINITY;
    for i in 0..=steps {
        let theta = core::f64::consts::PI * i as f64 / steps as f64;
        for j in 0..2 * steps {
            let phi = core::f64::consts::PI * j as f64 / steps as f64;
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let e = C64::from_polar(1.0, phi);
            let basis =
                ComplexMatrix::from_rows(&[&[C64::new(c, 0.0), -e.conj() * s], &[e * s, C64::new(c, 0.0)]]).unwrap();
            best = best.min(pinching_defect(rho, &basis, 2, de).unwrap());
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pointer_states_have_zero_discord(seed in any::<u64>(), da in 1usize..5, de in 1usize..4) {
        let mut rng = common::rng(seed);
        let basis = random::haar_matrix(da, &mut rng);
        let e = common::rotated_pointer_ensemble(&mut rng, &basis, de);
        let v = has_vqd(&assemble(&e), da, de, TOL, seed).unwrap();
        prop_assert_eq!(v.status, DiscordStatus::Vqd);
    }

    #[test]
    fn verdict_invariant_under_environment_unitaries(seed in any::<u64>(), da in 2usize..4, de in 1usize..4, n in 1usize..4) {
        let mut rng = common::rng(seed);
        let rho = if seed % 2 == 0 {
            assemble(&common::generic_ensemble(&mut rng, da, de, n))
        } else {
            let basis = random::haar_matrix(da, &mut rng);
            assemble(&common::rotated_pointer_ensemble(&mut rng, &basis, de))
        };
        let v = random::haar_matrix(de, &mut rng);
        let local = tensor(&ComplexMatrix::identity(da), &v).unwrap();
        let moved = rho.conjugate_by(&local).unwrap();
        let a = has_vqd(&rho, da, de, TOL, 1).unwrap();
        let b = has_vqd(&moved, da, de, TOL, 2).unwrap();
        prop_assert_eq!(a.status, b.status);
    }

    #[test]
    fn vqd_verdicts_are_self_certifying(seed in any::<u64>(), da in 1usize..5, de in 1usize..4) {
        let mut rng = common::rng(seed);
        let e = if seed % 3 == 0 {
            common::pointer_ensemble(&mut rng, da, de)
        } else {
            let basis = random::haar_matrix(da, &mut rng);
            common::rotated_pointer_ensemble(&mut rng, &basis, de)
        };
        let rho = assemble(&e);
        let v = has_vqd(&rho, da, de, TOL, seed).unwrap();
        let basis = v.basis.expect("VQD carries its basis");
        prop_assert!(basis.unitarity_defect() <= 1e-10);
        prop_assert!(v.residual <= TOL);
        let again = pinching_defect(&rho, &basis, da, de).unwrap();
        prop_assert!((again - v.residual).abs() <= 1e-15);
    }
}

#[test]
fn non_orthogonal_pointers_have_discord() {
    for seed in 0..4 {
        let mut rng = common::rng(seed);
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let e = SeparableEnsemble::from_matrices(
            2,
            2,
            [
                (0.5, ComplexMatrix::unit(2, 0, 0), random::density(2, 1, &mut rng)),
                (0.5, plus, random::density(2, 1, &mut rng)),
            ],
        )
        .unwrap();
        let rho = assemble(&e);
        let oracle = brute_force_defect(&rho, 2);
        assert!(oracle > 1e-3, "oracle {oracle}");
        let v = has_vqd(&rho, 2, 2, TOL, seed).unwrap();
        assert_eq!(v.status, DiscordStatus::Nonzero);
        assert!(v.residual > TOL);
    }
}

#[test]
fn oracle_agrees_on_zero_discord() {
    let mut rng = common::rng(11);
    let basis = random::haar_matrix(2, &mut rng);
    let rho = assemble(&common::rotated_pointer_ensemble(&mut rng, &basis, 2));
    // The grid only approximates the optimal basis.
    assert!(brute_force_defect(&rho, 2) < 0.05);
    assert_eq!(has_vqd(&rho, 2, 2, TOL, 0).unwrap().status, DiscordStatus::Vqd);
}
