use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, ComplexMatrix};

/// Tolerance for the density-matrix checks (hermiticity, trace, positivity).
pub const DENSITY_TOL: f64 = 1e-9;

/// A validated density matrix: Hermitian, unit trace and positive
/// semidefinite, each to [`DENSITY_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(mat, DENSITY_TOL)
    }

    pub fn with_tolerance(mat: ComplexMatrix, tol: f64) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotDensity {
                reason: "not square",
                value: mat.cols() as f64,
            });
        }
        let dev = mat.hermiticity_defect();
        if dev > tol {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = mat.trace();
        let trace_err = (tr.re - 1.0).abs().max(tr.im.abs());
        if trace_err > tol {
            return Err(Error::NotDensity {
                reason: "trace differs from one",
                value: tr.re,
            });
        }
        let lo = min_eigenvalue(&mat, tol)?;
        if lo < -tol {
            return Err(Error::NotDensity {
                reason: "negative eigenvalue",
                value: lo,
            });
        }
        Ok(Self { mat })
    }

    /// `|ψ⟩⟨ψ|` for a unit vector.
    pub fn pure(psi: &[crate::C64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(psi))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.mat
    }
}
