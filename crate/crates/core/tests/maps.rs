mod common;

use inducedmap_core::maps::{induce, is_cp, probe_positivity, CpStatus, JointUnitary};
use inducedmap_core::search::haar_unitary;
use inducedmap_core::states::{
    assemble, component_images, decompose_blocks, rescaled_matrices, DensityMatrix, SeparableEnsemble,
};
use inducedmap_core::{hermitian_eigen, partial_trace, random, tensor, ComplexMatrix, Subsystem, C64};
use proptest::prelude::*;

fn density(seed: u64, d: usize) -> DensityMatrix {
    let mut rng = common::rng(seed);
    let rank = 1 + (seed as usize % d);
    DensityMatrix::new(random::density(d, rank, &mut rng)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn affine_combination_is_preserved(seed in any::<u64>(), da in 1usize..4, de in 1usize..4, alpha in 0.0..1.0f64) {
        let mut rng = common::rng(seed);
        // Any joint state, SL or not.
        let rho = random::density(da * de, 1 + seed as usize % (da * de), &mut rng);
        let m = induce(&decompose_blocks(&rho, da, de).unwrap(), &haar_unitary(da, de, seed)).unwrap();
        let (r1, r2) = (density(seed ^ 1, da), density(seed ^ 2, da));
        let mix = r1.matrix().scale_real(alpha).add(&r2.matrix().scale_real(1.0 - alpha)).unwrap();
        let lhs = m.apply_operator(&mix).unwrap();
        let rhs = m.apply(&r1).unwrap().scale_real(alpha).add(&m.apply(&r2).unwrap().scale_real(1.0 - alpha)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        prop_assert!(lhs.hermiticity_defect() <= 1e-10);
    }

    #[test]
    fn sl_maps_preserve_trace(seed in any::<u64>(), da in 1usize..4, de in 1usize..4, n in 1usize..4) {
        let mut rng = common::rng(seed);
        let e = common::generic_ensemble(&mut rng, da, de, n);
        let m = induce(&decompose_blocks(&assemble(&e), da, de).unwrap(), &haar_unitary(da, de, seed)).unwrap();
        prop_assert!(m.shift_norm() == 0.0);
        let out = m.apply(&density(seed ^ 3, da)).unwrap();
        prop_assert!((out.trace() - C64::new(1.0, 0.0)).norm() <= 1e-10);
        prop_assert!(out.hermiticity_defect() <= 1e-10);
    }

    #[test]
    fn map_is_sum_of_component_evolutions(seed in any::<u64>(), da in 1usize..4, de in 1usize..4, n in 1usize..4) {
        let mut rng = common::rng(seed);
        let e = common::generic_ensemble(&mut rng, da, de, n);
        let u = haar_unitary(da, de, seed);
        let m = induce(&decompose_blocks(&assemble(&e), da, de).unwrap(), &u).unwrap();
        let rho_p = density(seed ^ 5, da);
        let images = component_images(&rho_p, &rescaled_matrices(&e).unwrap()).unwrap();
        let mut expect = ComplexMatrix::zeros(da, da);
        for (t, img) in e.terms().iter().zip(&images) {
            let joint = tensor(img, t.rho_e.matrix()).unwrap().conjugate_by(u.matrix()).unwrap();
            expect.add_scaled(C64::new(t.p, 0.0), &partial_trace(&joint, da, de, Subsystem::E).unwrap()).unwrap();
        }
        prop_assert!(m.apply(&rho_p).unwrap().max_abs_diff(&expect) <= 1e-10);
    }

    #[test]
    fn local_unitaries_act_by_conjugation(seed in any::<u64>(), da in 1usize..4, de in 1usize..4) {
        let mut rng = common::rng(seed);
        let e = SeparableEnsemble::from_matrices(
            da,
            de,
            [(1.0, random::density(da, da, &mut rng), random::density(de, 1, &mut rng))],
        )
        .unwrap();
        let va = random::haar_matrix(da, &mut rng);
        let ve = random::haar_matrix(de, &mut rng);
        let u = JointUnitary::new(tensor(&va, &ve).unwrap(), da, de).unwrap();
        let m = induce(&decompose_blocks(&assemble(&e), da, de).unwrap(), &u).unwrap();
        let rho_p = density(seed ^ 9, da);
        let expect = rho_p.matrix().conjugate_by(&va).unwrap();
        prop_assert!(m.apply(&rho_p).unwrap().max_abs_diff(&expect) <= 1e-10);
    }

    #[test]
    fn pointer_states_give_cp_maps(seed in any::<u64>(), da in 1usize..4, de in 1usize..4) {
        let mut rng = common::rng(seed);
        let e = common::pointer_ensemble(&mut rng, da, de);
        let m = induce(&decompose_blocks(&assemble(&e), da, de).unwrap(), &haar_unitary(da, de, seed)).unwrap();
        let v = is_cp(&m, 1e-9).unwrap();
        prop_assert_eq!(v.status, CpStatus::Cp, "choi min {}", v.choi_min_eigenvalue);
        prop_assert!(v.shift_norm <= 1e-10);
    }
}

#[test]
fn condition_ensembles_show_no_violation() {
    for seed in 0..10u64 {
        let mut rng = common::rng(seed);
        let e = common::block_ensemble(&mut rng, &[2, 2], 2);
        let d = decompose_blocks(&assemble(&e), 4, 2).unwrap();
        for t in 0..5 {
            let m = induce(&d, &haar_unitary(4, 2, seed * 100 + t)).unwrap();
            let p = probe_positivity(&m, 200, t, 1e-9).unwrap();
            assert!(!p.is_violated(), "seed {seed} trial {t}: {p:?}");
        }
    }
}

#[test]
fn choi_spectrum_of_cp_map_matches_kraus_count() {
    let mut rng = common::rng(4);
    let e = common::pointer_ensemble(&mut rng, 2, 3);
    let m = induce(&decompose_blocks(&assemble(&e), 2, 3).unwrap(), &haar_unitary(2, 3, 4)).unwrap();
    let c = inducedmap_core::maps::choi(&m);
    let ops = inducedmap_core::maps::kraus_from_choi(&c, 1e-9).unwrap();
    let rank = hermitian_eigen(c.matrix(), 1e-9)
        .unwrap()
        .eigenvalues
        .iter()
        .filter(|&&x| x > 1e-9)
        .count();
    assert_eq!(ops.len(), rank);
    let rho_p = density(8, 2);
    let direct = m.apply(&rho_p).unwrap();
    let via = inducedmap_core::maps::apply_kraus(&ops, rho_p.matrix()).unwrap();
    assert!(direct.max_abs_diff(&via) <= 1e-10);
}
