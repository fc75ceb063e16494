use alloc::vec::Vec;

use super::InducedMap;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, C64};
use crate::random::{self, Rng};
use crate::states::DensityMatrix;

/// Iteration cap of the local refinement.
pub const MAX_REFINE_ITERS: usize = 200;
const INITIAL_STEP: f64 = 0.5;
const MIN_STEP: f64 = 1e-10;

/// Evidence about positivity gathered by sampling. Never a proof of
/// positivity.
#[derive(Debug, Clone, PartialEq)]
pub enum Positivity {
    /// No input within budget produced an output eigenvalue below `-tol`.
    NoViolationFound { lowest_eigenvalue: f64 },
    /// A valid density matrix whose image has eigenvalue `min_eigenvalue < -tol`.
    Violated {
        witness: DensityMatrix,
        min_eigenvalue: f64,
    },
}

impl Positivity {
    pub fn is_violated(&self) -> bool {
        matches!(self, Positivity::Violated { .. })
    }

    /// Lowest output eigenvalue seen.
    pub fn lowest_eigenvalue(&self) -> f64 {
        match *self {
            Positivity::NoViolationFound { lowest_eigenvalue } => lowest_eigenvalue,
            Positivity::Violated { min_eigenvalue, .. } => min_eigenvalue,
        }
    }

    /// Combines results of independent probes, keeping the worst.
    pub fn merge(self, other: Self) -> Self {
        match (&self, &other) {
            (Positivity::Violated { .. }, Positivity::NoViolationFound { .. }) => self,
            (Positivity::NoViolationFound { .. }, Positivity::Violated { .. }) => other,
            _ if other.lowest_eigenvalue() < self.lowest_eigenvalue() => other,
            _ => self,
        }
    }
}

/// Smallest eigenvalue of `S[|ψ⟩⟨ψ|]`.
fn output_min(m: &InducedMap, psi: &[C64]) -> Result<f64> {
    let out = m.apply_operator(&ComplexMatrix::outer(psi))?;
    Ok(hermitian_eigenvalues(&out.hermitian_part(), f64::INFINITY)?[0])
}

/// Searches pure inputs for a positivity violation.
///
/// Draws `budget` Haar-random pure states, then refines the worst one by
/// random normalized perturbations: each round tries `2·dim` directions at
/// the current step, moves to the best improvement, and halves the step when
/// none improves, for at most [`MAX_REFINE_ITERS`] rounds. A violation is
/// only reported after re-evaluating the witness as a validated density
/// matrix. Pure inputs suffice since every state is a mixture of them and
/// the map is affine.
pub fn probe_positivity(m: &InducedMap, budget: usize, seed: u64, tol: f64) -> Result<Positivity> {
    if budget == 0 {
        return Err(Error::InvalidConfig("positivity budget must be at least 1"));
    }
    let d = m.dim();
    let mut rng = random::rng(seed);
    let mut best = random::pure_state(d, &mut rng);
    let mut best_val = output_min(m, &best)?;
    for _ in 1..budget {
        let psi = random::pure_state(d, &mut rng);
        let v = output_min(m, &psi)?;
        if v < best_val {
            best = psi;
            best_val = v;
        }
    }
    let (psi, _) = refine(m, best, best_val, &mut rng)?;

    let witness = DensityMatrix::pure(&psi)?;
    let out = m.apply(&witness)?;
    let min_eigenvalue = hermitian_eigenvalues(&out.hermitian_part(), f64::INFINITY)?[0];
    Ok(if min_eigenvalue < -tol {
        Positivity::Violated {
            witness,
            min_eigenvalue,
        }
    } else {
        Positivity::NoViolationFound {
            lowest_eigenvalue: min_eigenvalue,
        }
    })
}

fn refine(m: &InducedMap, mut psi: Vec<C64>, mut val: f64, rng: &mut Rng) -> Result<(Vec<C64>, f64)> {
    let d = psi.len();
    let mut step = INITIAL_STEP;
    for _ in 0..MAX_REFINE_ITERS {
        if step < MIN_STEP {
            break;
        }
        let mut round_best: Option<(Vec<C64>, f64)> = None;
        for _ in 0..2 * d {
            let mut cand: Vec<C64> = psi.iter().map(|&x| x + random::complex_gaussian(rng) * step).collect();
            random::normalize(&mut cand);
            let v = output_min(m, &cand)?;
            if v < round_best.as_ref().map_or(val, |b| b.1) {
                round_best = Some((cand, v));
            }
        }
        match round_best {
            Some((cand, v)) => {
                psi = cand;
                val = v;
            }
            None => step *= 0.5,
        }
    }
    Ok((psi, val))
}
