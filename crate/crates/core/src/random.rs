//! Seeded sampling of unitaries, pure states and density matrices.
//!
//! All randomness in the crate flows through [`Rng`] (ChaCha8), so every
//! sampler is reproducible from a `u64` seed.

use alloc::vec::Vec;

use rand::{Rng as _, SeedableRng};
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64};

pub type Rng = rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Mixes a base seed with an index into an independent child seed
/// (splitmix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
pub fn complex_gaussian(rng: &mut Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut Rng) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("finite gaussian samples")
}

/// Haar-random unitary.
///
/// Orthonormalizes the columns of a complex Gaussian matrix by modified
/// Gram-Schmidt, run twice per column. The implied triangular factor then has
/// a positive real diagonal, which is the phase fix that makes the
/// distribution Haar.
pub fn haar_matrix(dim: usize, rng: &mut Rng) -> ComplexMatrix {
    let z = gaussian_matrix(dim, dim, rng);
    let mut cols: Vec<Vec<C64>> = (0..dim).map(|j| z.column(j)).collect();
    for j in 0..dim {
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let proj: C64 = done[i].iter().zip(&rest[0]).map(|(q, x)| q.conj() * x).sum();
                for (x, q) in rest[0].iter_mut().zip(&done[i]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = libm::sqrt(cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>());
        for x in &mut cols[j] {
            *x /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(dim, dim);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            u[(i, j)] = x;
        }
    }
    u
}

/// Haar-random unit vector.
pub fn pure_state(dim: usize, rng: &mut Rng) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    normalize(&mut v);
    v
}

pub(crate) fn normalize(v: &mut [C64]) {
    let norm = libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>());
    for x in v {
        *x /= norm;
    }
}

/// Random density matrix of the given rank, `G G† / Tr(G G†)` for a
/// `dim x rank` complex Gaussian `G`.
pub fn density(dim: usize, rank: usize, rng: &mut Rng) -> ComplexMatrix {
    let g = gaussian_matrix(dim, rank.max(1), rng);
    let w = g.matmul_unchecked(&g.adjoint());
    let tr = w.trace().re;
    w.scale_real(1.0 / tr).hermitian_part()
}

/// Random Hermitian matrix with Gaussian entries.
pub fn hermitian(dim: usize, rng: &mut Rng) -> ComplexMatrix {
    gaussian_matrix(dim, dim, rng).hermitian_part()
}

/// Random probability vector (normalized exponential samples).
pub fn probabilities(n: usize, rng: &mut Rng) -> Vec<f64> {
    let mut p: Vec<f64> = (0..n).map(|_| -libm::log(1.0 - rng.random::<f64>())).collect();
    let s: f64 = p.iter().sum();
    for x in &mut p {
        *x /= s;
    }
    p
}
