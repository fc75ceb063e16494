use alloc::format;
use alloc::vec::Vec;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{tensor, ComplexMatrix, C64, MAX_TENSOR_ROWS};

/// One product term `p · ρ_A ⊗ ρ_E` of a separable state.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleTerm {
    pub p: f64,
    pub rho_a: DensityMatrix,
    pub rho_e: DensityMatrix,
}

/// Convex decomposition `Σ_i p_i ρ_A^(i) ⊗ ρ_E^(i)` of a separable
/// system-environment state.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableEnsemble {
    dim_a: usize,
    dim_e: usize,
    terms: Vec<EnsembleTerm>,
}

impl SeparableEnsemble {
    /// Validates weights (non-negative, summing to one within 1e-9) and
    /// factor dimensions.
    pub fn new(dim_a: usize, dim_e: usize, terms: Vec<EnsembleTerm>) -> Result<Self> {
        if dim_a == 0 || dim_e == 0 {
            return Err(Error::InvalidEnsemble(format!(
                "dimensions must be positive (got {dim_a}x{dim_e})"
            )));
        }
        if dim_a.saturating_mul(dim_e) > MAX_TENSOR_ROWS {
            return Err(Error::TooLarge {
                rows: dim_a.saturating_mul(dim_e),
                limit: MAX_TENSOR_ROWS,
            });
        }
        if terms.is_empty() {
            return Err(Error::InvalidEnsemble("no terms".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            if t.p.is_nan() || t.p < 0.0 || !t.p.is_finite() {
                return Err(Error::InvalidEnsemble(format!("term {i}: weight {} is negative", t.p)));
            }
            if t.rho_a.dim() != dim_a || t.rho_e.dim() != dim_e {
                return Err(Error::ShapeMismatch {
                    op: "ensemble term factors",
                    left: (t.rho_a.dim(), t.rho_e.dim()),
                    right: (dim_a, dim_e),
                });
            }
        }
        let total: f64 = terms.iter().map(|t| t.p).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidEnsemble(format!("weights sum to {total}")));
        }
        Ok(Self { dim_a, dim_e, terms })
    }

    /// Builds the ensemble from raw matrices, validating each as a density
    /// matrix.
    pub fn from_matrices(
        dim_a: usize,
        dim_e: usize,
        terms: impl IntoIterator<Item = (f64, ComplexMatrix, ComplexMatrix)>,
    ) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(p, a, e)| {
                Ok(EnsembleTerm {
                    p,
                    rho_a: DensityMatrix::new(a)?,
                    rho_e: DensityMatrix::new(e)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim_a, dim_e, terms)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn terms(&self) -> &[EnsembleTerm] {
        &self.terms
    }

    /// `Γ_kl = Σ_i p_i (ρ_A^(i))_kl`, the system marginal.
    pub fn marginal(&self) -> ComplexMatrix {
        let mut g = ComplexMatrix::zeros(self.dim_a, self.dim_a);
        for t in &self.terms {
            g.add_scaled(C64::new(t.p, 0.0), t.rho_a.matrix())
                .expect("validated dims");
        }
        g
    }
}

/// `Σ_i p_i ρ_A^(i) ⊗ ρ_E^(i)`.
pub fn assemble(e: &SeparableEnsemble) -> ComplexMatrix {
    let n = e.dim_a * e.dim_e;
    let mut out = ComplexMatrix::zeros(n, n);
    for t in &e.terms {
        let prod = tensor(t.rho_a.matrix(), t.rho_e.matrix()).expect("validated dims");
        out.add_scaled(C64::new(t.p, 0.0), &prod).expect("validated dims");
    }
    out
}
