use alloc::vec::Vec;

use super::InducedMap;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, min_eigenvalue, ComplexMatrix, C64};

/// Choi matrix of the linear part: block `(k, l)` is `S[|k⟩⟨l|]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiMatrix {
    mat: ComplexMatrix,
    dim_a: usize,
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }
}

pub fn choi(m: &InducedMap) -> ChoiMatrix {
    let d = m.dim();
    let mut mat = ComplexMatrix::zeros(d * d, d * d);
    for k in 0..d {
        for l in 0..d {
            mat.set_block(k * d, l * d, m.image(k, l));
        }
    }
    ChoiMatrix { mat, dim_a: d }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CpStatus {
    Cp,
    /// Linear part has a negative Choi eigenvalue.
    NotCp,
    /// Nonzero shift term; an affine map with an offset is never CP.
    NotCpAffine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpVerdict {
    pub status: CpStatus,
    pub choi_min_eigenvalue: f64,
    pub shift_norm: f64,
}

impl CpVerdict {
    pub fn is_cp(&self) -> bool {
        self.status == CpStatus::Cp
    }
}

/// CP iff the Choi matrix is PSD to `tol` and the shift vanishes to `tol`.
/// A nonzero shift takes precedence in the reported status.
pub fn is_cp(m: &InducedMap, tol: f64) -> Result<CpVerdict> {
    let c = choi(m);
    let choi_min_eigenvalue = min_eigenvalue(c.matrix(), crate::HERMITIAN_TOL.max(tol))?;
    let shift_norm = m.shift_norm();
    let status = if shift_norm > tol {
        CpStatus::NotCpAffine
    } else if choi_min_eigenvalue < -tol {
        CpStatus::NotCp
    } else {
        CpStatus::Cp
    };
    Ok(CpVerdict {
        status,
        choi_min_eigenvalue,
        shift_norm,
    })
}

/// Kraus operators `K_j[a, k] = √λ_j v_j[k·d + a]` from the eigenpairs of a
/// PSD Choi matrix; eigenvalues at or below `tol` are dropped.
pub fn kraus_from_choi(c: &ChoiMatrix, tol: f64) -> Result<Vec<ComplexMatrix>> {
    let d = c.dim_a;
    let spec = hermitian_eigen(c.matrix(), crate::HERMITIAN_TOL.max(tol))?;
    if spec.min() < -tol {
        return Err(Error::NotPsd {
            min_eigenvalue: spec.min(),
        });
    }
    let mut ops = Vec::new();
    for (j, &lambda) in spec.eigenvalues.iter().enumerate().rev() {
        if lambda <= tol {
            continue;
        }
        let s = libm::sqrt(lambda);
        let mut k_op = ComplexMatrix::zeros(d, d);
        for k in 0..d {
            for a in 0..d {
                k_op[(a, k)] = spec.eigenvectors[(k * d + a, j)] * s;
            }
        }
        ops.push(k_op);
    }
    Ok(ops)
}

/// `Σ_j K_j x K_j†`.
pub fn apply_kraus(ops: &[ComplexMatrix], x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(x.rows(), x.cols());
    for k in ops {
        out.add_scaled(C64::new(1.0, 0.0), &x.conjugate_by(k)?)?;
    }
    Ok(out)
}
