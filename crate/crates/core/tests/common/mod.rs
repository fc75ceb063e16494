#![allow(dead_code)]

use inducedmap_core::random::{self, Rng};
use inducedmap_core::states::SeparableEnsemble;
use inducedmap_core::ComplexMatrix;

pub fn rng(seed: u64) -> Rng {
    random::rng(seed)
}

/// Generic full-rank ensemble; SL with probability one.
pub fn generic_ensemble(rng: &mut Rng, da: usize, de: usize, n: usize) -> SeparableEnsemble {
    let ps = random::probabilities(n, rng);
    let terms: Vec<_> = ps
        .into_iter()
        .map(|p| (p, random::density(da, da, rng), random::density(de, de, rng)))
        .collect();
    SeparableEnsemble::from_matrices(da, de, terms).unwrap()
}

/// One term per contiguous diagonal block of the given sizes, each block a
/// random full-rank density.
pub fn block_ensemble(rng: &mut Rng, sizes: &[usize], de: usize) -> SeparableEnsemble {
    let da: usize = sizes.iter().sum();
    let ps = random::probabilities(sizes.len(), rng);
    let mut offset = 0;
    let mut terms = Vec::new();
    for (&s, p) in sizes.iter().zip(ps) {
        let mut a = ComplexMatrix::zeros(da, da);
        a.set_block(offset, offset, &random::density(s, s, rng));
        offset += s;
        terms.push((p, a, random::density(de, de, rng)));
    }
    SeparableEnsemble::from_matrices(da, de, terms).unwrap()
}

/// `Σ_k p_k |k⟩⟨k| ⊗ ρ_E^(k)` in the computational basis.
pub fn pointer_ensemble(rng: &mut Rng, da: usize, de: usize) -> SeparableEnsemble {
    let ps = random::probabilities(da, rng);
    let terms: Vec<_> = ps
        .into_iter()
        .enumerate()
        .map(|(k, p)| (p, ComplexMatrix::unit(da, k, k), random::density(de, de, rng)))
        .collect();
    SeparableEnsemble::from_matrices(da, de, terms).unwrap()
}

/// Like [`pointer_ensemble`] but in the basis given by the columns of `basis`.
pub fn rotated_pointer_ensemble(rng: &mut Rng, basis: &ComplexMatrix, de: usize) -> SeparableEnsemble {
    let da = basis.rows();
    let ps = random::probabilities(da, rng);
    let terms: Vec<_> = ps
        .into_iter()
        .enumerate()
        .map(|(k, p)| (p, ComplexMatrix::outer(&basis.column(k)), random::density(de, de, rng)))
        .collect();
    SeparableEnsemble::from_matrices(da, de, terms).unwrap()
}
