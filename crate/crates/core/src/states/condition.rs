use alloc::vec;
use alloc::vec::Vec;

use super::{assemble, classify_sl, decompose_blocks, DensityMatrix, SeparableEnsemble, SlClass};
use crate::error::{Error, Result};
use crate::linalg::{hadamard, hermitian_eigen, hermitian_eigenvalues, is_psd, ComplexMatrix};

/// `|Γ_kl|` at or below this is treated as zero when forming ratios.
pub const RATIO_ZERO_TOL: f64 = 1e-10;
/// Eigenvalue cutoff defining the support of a component.
pub const SUPPORT_CUTOFF: f64 = 1e-9;
/// Operator-norm bound on `Π_i Π_j` for supports to count as orthogonal.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Re-scaled matrices `ϱ_R^(i)` with entries `𝓔^(i)_kl / Γ_kl`, one per
/// ensemble term.
#[derive(Debug, Clone, PartialEq)]
pub struct RescaledSet {
    pub matrices: Vec<ComplexMatrix>,
    /// Row-major `dim_a x dim_a` flags: true where `Γ_kl = 0` and every
    /// component entry is zero too, so the entry was set to 0 by convention.
    pub convention_mask: Vec<bool>,
}

impl RescaledSet {
    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }
}

/// Forms the re-scaled matrices of an ensemble whose joint state is SL.
///
/// Entries with `Γ_kl = 0` are 0 when every weighted component entry is
/// zero too. A nonzero component entry over a vanishing `Γ_kl` means the
/// components cancel and the condition is indeterminate.
pub fn rescaled_matrices(e: &SeparableEnsemble) -> Result<RescaledSet> {
    let rho = assemble(e);
    let decomposition = decompose_blocks(&rho, e.dim_a(), e.dim_e())?;
    if classify_sl(&decomposition) == SlClass::NonSl {
        let (row, col) = decomposition
            .pairs(super::PairClass::TracelessNonzero)
            .next()
            .expect("non-SL has a traceless pair");
        return Err(Error::NonSl { row, col });
    }
    let d = e.dim_a();
    let gamma = e.marginal();
    let mut mask = vec![false; d * d];
    let mut matrices = Vec::with_capacity(e.terms().len());
    for (i, t) in e.terms().iter().enumerate() {
        let comp = t.rho_a.matrix();
        let mut r = ComplexMatrix::zeros(d, d);
        for k in 0..d {
            for l in 0..d {
                let g = gamma[(k, l)];
                if g.norm() > RATIO_ZERO_TOL {
                    r[(k, l)] = comp[(k, l)] / g;
                } else if t.p > 0.0 && comp[(k, l)].norm() > RATIO_ZERO_TOL {
                    return Err(Error::Cancellation {
                        term: i,
                        row: k,
                        col: l,
                    });
                } else {
                    mask[k * d + l] = true;
                }
            }
        }
        matrices.push(r);
    }
    Ok(RescaledSet {
        matrices,
        convention_mask: mask,
    })
}

/// `ϱ_A^(i) = ρ' ∘ ϱ_R^(i)` (entrywise) for every term.
pub fn component_images(rho_prime: &DensityMatrix, rs: &RescaledSet) -> Result<Vec<ComplexMatrix>> {
    rs.matrices.iter().map(|r| hadamard(rho_prime.matrix(), r)).collect()
}

/// Independent ways of establishing the sufficient condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// Every re-scaled matrix is positive semidefinite.
    RescaledPsd,
    /// The components live on mutually orthogonal subspaces that together
    /// span the system space.
    BlockProjector,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConditionWitness {
    /// Joint state is not SL; neither route applies.
    NonSl { row: usize, col: usize },
    /// Re-scaled matrices undefined because components cancel.
    Cancellation { term: usize, row: usize, col: usize },
    /// A re-scaled matrix has a negative eigenvalue.
    NotPsd { term: usize, min_eigenvalue: f64 },
    /// Supports of two components are not orthogonal (`‖Π_i Π_j‖` given).
    SupportOverlap { first: usize, second: usize, overlap: f64 },
}

/// Outcome of [`check_condition`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub holds: bool,
    /// Routes that hold; empty when neither does.
    pub routes: Vec<Route>,
    pub sl_class: SlClass,
    /// Min eigenvalue of each re-scaled matrix, when they are defined.
    pub rescaled_min_eigenvalues: Option<Vec<f64>>,
    /// Rank `d_i` of each component's support.
    pub support_ranks: Vec<usize>,
    /// `d - Σ d_i`: directions no component touches. When the block route
    /// holds these are added to one of the projectors to complete `Σ Π_i = I`.
    pub unassigned_dim: usize,
    pub witnesses: Vec<ConditionWitness>,
}

impl ConditionReport {
    /// Neither route holds and the re-scaled route could not be evaluated.
    pub fn indeterminate(&self) -> bool {
        !self.holds
            && self
                .witnesses
                .iter()
                .any(|w| matches!(w, ConditionWitness::Cancellation { .. }))
    }
}

/// Evaluates both routes of the positivity condition on an ensemble.
///
/// Both routes require the joint state to be SL. The re-scaled route asks
/// every `ϱ_R^(i)` to be PSD to `tol`. The block route takes the support
/// projector `Π_i` of each component (eigenvalues above [`SUPPORT_CUTOFF`])
/// and asks them to be pairwise orthogonal; any leftover directions can be
/// absorbed into one of the `Π_i`, so `Σ Π_i = I` and `ρ_A^(i) = Π_i ρ_A^(i) Π_i`
/// then hold. Terms with zero weight are ignored by the block route.
pub fn check_condition(e: &SeparableEnsemble, tol: f64) -> Result<ConditionReport> {
    let mut witnesses = Vec::new();
    let mut routes = Vec::new();

    let mut sl_class = SlClass::Sl;
    let mut rescaled_min = None;
    match rescaled_matrices(e) {
        Ok(rs) => {
            let mut mins = Vec::with_capacity(rs.matrices.len());
            for (i, m) in rs.matrices.iter().enumerate() {
                let v = is_psd(m, crate::HERMITIAN_TOL.max(tol))?;
                mins.push(v.min_eigenvalue);
                if v.min_eigenvalue < -tol {
                    witnesses.push(ConditionWitness::NotPsd {
                        term: i,
                        min_eigenvalue: v.min_eigenvalue,
                    });
                }
            }
            if mins.iter().all(|&m| m >= -tol) {
                routes.push(Route::RescaledPsd);
            }
            rescaled_min = Some(mins);
        }
        Err(Error::NonSl { row, col }) => {
            sl_class = SlClass::NonSl;
            witnesses.push(ConditionWitness::NonSl { row, col });
        }
        Err(Error::Cancellation { term, row, col }) => {
            witnesses.push(ConditionWitness::Cancellation { term, row, col });
        }
        Err(other) => return Err(other),
    }

    let d = e.dim_a();
    let mut projectors = Vec::with_capacity(e.terms().len());
    let mut support_ranks = Vec::with_capacity(e.terms().len());
    for t in e.terms() {
        let (p, rank) = hermitian_eigen(t.rho_a.matrix(), crate::HERMITIAN_TOL)?.support_projector(SUPPORT_CUTOFF);
        projectors.push((t.p > 0.0).then_some(p));
        support_ranks.push(rank);
    }
    let mut orthogonal = true;
    for i in 0..projectors.len() {
        for j in i + 1..projectors.len() {
            let (Some(pi), Some(pj)) = (&projectors[i], &projectors[j]) else {
                continue;
            };
            let overlap = operator_norm(&pi.matmul(pj)?)?;
            if overlap > ORTHOGONALITY_TOL {
                orthogonal = false;
                witnesses.push(ConditionWitness::SupportOverlap {
                    first: i,
                    second: j,
                    overlap,
                });
            }
        }
    }
    let used: usize = projectors
        .iter()
        .zip(&support_ranks)
        .filter(|(p, _)| p.is_some())
        .map(|(_, r)| r)
        .sum();
    if orthogonal && sl_class == SlClass::Sl {
        routes.push(Route::BlockProjector);
    }

    Ok(ConditionReport {
        holds: !routes.is_empty(),
        routes,
        sl_class,
        rescaled_min_eigenvalues: rescaled_min,
        support_ranks,
        unassigned_dim: d.saturating_sub(used),
        witnesses,
    })
}

/// Largest singular value.
fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    let gram = m.matmul(&m.adjoint())?;
    let top = *hermitian_eigenvalues(&gram, f64::INFINITY)?.last().expect("non-empty");
    Ok(libm::sqrt(top.max(0.0)))
}
