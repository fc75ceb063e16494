use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{check_bipartite, partial_trace, tensor, ComplexMatrix, Subsystem, C64};
use crate::states::{DensityMatrix, PairClass, SlDecomposition};

/// Unitary on the joint space `C^dim_a ⊗ C^dim_e`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointUnitary {
    mat: ComplexMatrix,
    dim_a: usize,
    dim_e: usize,
}

/// Max-entry tolerance on `U†U − I`.
pub const UNITARY_TOL: f64 = 1e-10;

impl JointUnitary {
    pub fn new(mat: ComplexMatrix, dim_a: usize, dim_e: usize) -> Result<Self> {
        check_bipartite("JointUnitary", &mat, dim_a, dim_e)?;
        let deviation = mat.unitarity_defect();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { mat, dim_a, dim_e })
    }

    pub fn identity(dim_a: usize, dim_e: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim_a * dim_e),
            dim_a,
            dim_e,
        }
    }

    /// `|00⟩⟨00| + |01⟩⟨01| + |10⟩⟨11| + |11⟩⟨10|`, system as control.
    pub fn cnot() -> Self {
        let mat = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .expect("static");
        Self {
            mat,
            dim_a: 2,
            dim_e: 2,
        }
    }

    /// Exchanges system and environment (`dim x dim`).
    pub fn swap(dim: usize) -> Self {
        let n = dim * dim;
        let mut mat = ComplexMatrix::zeros(n, n);
        for a in 0..dim {
            for b in 0..dim {
                mat[(b * dim + a, a * dim + b)] = C64::new(1.0, 0.0);
            }
        }
        Self {
            mat,
            dim_a: dim,
            dim_e: dim,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_e)
    }
}

/// How the environment blocks weight the linear part of the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BlockWeighting {
    /// `S[|k⟩⟨l|] = Tr_E[U (|k⟩⟨l| ⊗ ψ_kl) U†]` with unit-trace `ψ_kl`. The
    /// linear part of an SL map is then trace preserving and sends the true
    /// marginal to the true evolved marginal.
    #[default]
    Normalized,
    /// `S[|k⟩⟨l|] = Tr_E[U (|k⟩⟨l| ⊗ Γ_kl ψ_kl) U†]`, i.e. the raw joint-state
    /// blocks. This is the weighting under which the Bell state evolved by a
    /// CNOT sends `|0⟩⟨0|` to `½[[1,1],[1,0]]`; it is not trace preserving.
    Unnormalized,
}

/// Affine map `ρ' ↦ Σ_kl ρ'_kl S_kl + shift` on `dim_a x dim_a` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedMap {
    dim_a: usize,
    images: Vec<ComplexMatrix>,
    shift: ComplexMatrix,
}

impl InducedMap {
    /// Builds a map from its basis images (row-major over `(k, l)`) and shift.
    pub fn from_parts(dim_a: usize, images: Vec<ComplexMatrix>, shift: ComplexMatrix) -> Result<Self> {
        if images.len() != dim_a * dim_a {
            return Err(Error::InvalidShape {
                rows: dim_a,
                cols: dim_a,
                len: images.len(),
            });
        }
        for m in images.iter().chain(core::iter::once(&shift)) {
            if m.shape() != (dim_a, dim_a) {
                return Err(Error::ShapeMismatch {
                    op: "InducedMap",
                    left: m.shape(),
                    right: (dim_a, dim_a),
                });
            }
        }
        Ok(Self { dim_a, images, shift })
    }

    pub fn dim(&self) -> usize {
        self.dim_a
    }

    /// `S[|k⟩⟨l|]` of the linear part.
    pub fn image(&self, k: usize, l: usize) -> &ComplexMatrix {
        &self.images[k * self.dim_a + l]
    }

    pub fn shift(&self) -> &ComplexMatrix {
        &self.shift
    }

    pub fn shift_norm(&self) -> f64 {
        self.shift.max_abs()
    }

    /// Applies the linear part only.
    pub fn apply_linear(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = self.dim_a;
        if x.shape() != (d, d) {
            return Err(Error::ShapeMismatch {
                op: "apply",
                left: x.shape(),
                right: (d, d),
            });
        }
        let mut out = ComplexMatrix::zeros(d, d);
        for k in 0..d {
            for l in 0..d {
                let c = x[(k, l)];
                if c != C64::new(0.0, 0.0) {
                    out.add_scaled(c, &self.images[k * d + l])?;
                }
            }
        }
        Ok(out)
    }

    /// Applies the full affine map to any `dim_a x dim_a` operator.
    pub fn apply_operator(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut out = self.apply_linear(x)?;
        out.add_scaled(C64::new(1.0, 0.0), &self.shift)?;
        Ok(out)
    }

    /// `S[ρ'] = Σ_kl ρ'_kl S_kl + shift`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<ComplexMatrix> {
        self.apply_operator(rho.matrix())
    }
}

/// Induces the map of a decomposed joint state under `u`, weighting the
/// blocks as [`BlockWeighting::Normalized`].
pub fn induce(d: &SlDecomposition, u: &JointUnitary) -> Result<InducedMap> {
    induce_with(d, u, BlockWeighting::Normalized)
}

/// Induces the map of a decomposed joint state under `u`.
///
/// Unit-trace pairs contribute `images[k][l] = Tr_E[U (|k⟩⟨l| ⊗ ψ_kl) U†]`
/// (scaled by `Γ_kl` under [`BlockWeighting::Unnormalized`]); zero blocks
/// contribute nothing. Traceless nonzero blocks do not depend on the input
/// and are collected into `shift = Σ Γ_kl Tr_E[U (|k⟩⟨l| ⊗ ψ_kl) U†]`.
pub fn induce_with(d: &SlDecomposition, u: &JointUnitary, weighting: BlockWeighting) -> Result<InducedMap> {
    let (da, de) = (d.dim_a(), d.dim_e());
    if u.dims() != (da, de) {
        return Err(Error::DimensionMismatch {
            op: "induce",
            rows: u.matrix().rows(),
            cols: u.matrix().cols(),
            dim_a: da,
            dim_e: de,
        });
    }
    let evolve = |k: usize, l: usize, env: &ComplexMatrix| -> Result<ComplexMatrix> {
        let x = tensor(&ComplexMatrix::unit(da, k, l), env)?;
        partial_trace(&x.conjugate_by(u.matrix())?, da, de, Subsystem::E)
    };
    let mut images = Vec::with_capacity(da * da);
    let mut shift = ComplexMatrix::zeros(da, da);
    for k in 0..da {
        for l in 0..da {
            let image = match d.pair_class(k, l) {
                PairClass::UnitTrace => match weighting {
                    BlockWeighting::Normalized => evolve(k, l, d.psi(k, l))?,
                    BlockWeighting::Unnormalized => evolve(k, l, &d.raw_block(k, l))?,
                },
                PairClass::ZeroBlock => ComplexMatrix::zeros(da, da),
                PairClass::TracelessNonzero => {
                    shift.add_scaled(C64::new(1.0, 0.0), &evolve(k, l, &d.raw_block(k, l))?)?;
                    ComplexMatrix::zeros(da, da)
                }
            };
            images.push(image);
        }
    }
    Ok(InducedMap {
        dim_a: da,
        images,
        shift,
    })
}
