use alloc::vec::Vec;

use super::DensityMatrix;
use crate::error::Result;
use crate::linalg::{check_bipartite, tensor, ComplexMatrix, C64};

/// How an environment block `R_kl = (⟨k|⊗I) ρ (|l⟩⊗I)` was normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// `Γ_kl = Tr R_kl ≠ 0` and `ψ_kl = R_kl / Γ_kl` has unit trace.
    UnitTrace,
    /// The block vanishes; `Γ_kl = 0`, `ψ_kl = 0`.
    ZeroBlock,
    /// Traceless but nonzero block. Stored as `Γ_kl = 1`, `ψ_kl = R_kl`;
    /// only the product `Γ_kl ψ_kl` is meaningful.
    TracelessNonzero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlClass {
    Sl,
    NonSl,
}

/// Thresholds used to classify blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockTolerances {
    /// `|Tr R_kl|` at or below this counts as traceless.
    pub trace: f64,
    /// `max |R_kl|` at or below this counts as a zero block.
    pub zero: f64,
}

impl Default for BlockTolerances {
    fn default() -> Self {
        Self {
            trace: 1e-10,
            zero: 1e-10,
        }
    }
}

/// Block decomposition `ρ_AE = Σ_kl Γ_kl |k⟩⟨l| ⊗ ψ_kl` in the computational
/// basis of the system.
#[derive(Debug, Clone, PartialEq)]
pub struct SlDecomposition {
    dim_a: usize,
    dim_e: usize,
    gamma: ComplexMatrix,
    psi: Vec<ComplexMatrix>,
    classes: Vec<PairClass>,
}

impl SlDecomposition {
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    /// Coefficients `Γ_kl` as a `dim_a x dim_a` matrix.
    pub fn gamma(&self) -> &ComplexMatrix {
        &self.gamma
    }

    pub fn psi(&self, k: usize, l: usize) -> &ComplexMatrix {
        &self.psi[k * self.dim_a + l]
    }

    pub fn pair_class(&self, k: usize, l: usize) -> PairClass {
        self.classes[k * self.dim_a + l]
    }

    /// `Γ_kl ψ_kl`, the block as it appears in the joint state.
    pub fn raw_block(&self, k: usize, l: usize) -> ComplexMatrix {
        self.psi(k, l).scale(self.gamma[(k, l)])
    }

    /// Pairs `(k, l)` of the given class, row-major.
    pub fn pairs(&self, class: PairClass) -> impl Iterator<Item = (usize, usize)> + '_ {
        let d = self.dim_a;
        (0..d * d)
            .filter(move |&i| self.classes[i] == class)
            .map(move |i| (i / d, i % d))
    }

    /// `Σ_kl Γ_kl |k⟩⟨l| ⊗ ψ_kl`.
    pub fn reassemble(&self) -> ComplexMatrix {
        let (d, f) = (self.dim_a, self.dim_e);
        let mut out = ComplexMatrix::zeros(d * f, d * f);
        for k in 0..d {
            for l in 0..d {
                out.set_block(k * f, l * f, &self.raw_block(k, l));
            }
        }
        out
    }

    /// `Σ_{(k,l) unit-trace} Γ_kl |k⟩⟨l|`.
    pub fn marginal(&self) -> ComplexMatrix {
        let d = self.dim_a;
        let mut out = ComplexMatrix::zeros(d, d);
        for (k, l) in self.pairs(PairClass::UnitTrace) {
            out[(k, l)] = self.gamma[(k, l)];
        }
        out
    }

    /// The shift-free part `Σ_{(k,l) unit-trace} Γ_kl |k⟩⟨l| ⊗ ψ_kl`.
    pub fn sl_part(&self) -> ComplexMatrix {
        let (d, f) = (self.dim_a, self.dim_e);
        let mut out = ComplexMatrix::zeros(d * f, d * f);
        for (k, l) in self.pairs(PairClass::UnitTrace) {
            let unit = ComplexMatrix::unit(d, k, l);
            let term = tensor(&unit, &self.raw_block(k, l)).expect("small dims");
            out.add_scaled(C64::new(1.0, 0.0), &term).expect("same shape");
        }
        out
    }
}

/// Splits a joint density matrix into environment blocks, see
/// [`decompose_blocks_with`].
pub fn decompose_blocks(rho: &ComplexMatrix, dim_a: usize, dim_e: usize) -> Result<SlDecomposition> {
    decompose_blocks_with(rho, dim_a, dim_e, BlockTolerances::default())
}

/// Splits a joint density matrix into blocks `R_kl`, normalizing each to
/// `Γ_kl ψ_kl` and classifying it.
///
/// The input is validated as a density matrix and symmetrized first, so
/// `Γ_lk = conj(Γ_kl)` and `ψ_lk = ψ_kl†` hold exactly.
pub fn decompose_blocks_with(
    rho: &ComplexMatrix,
    dim_a: usize,
    dim_e: usize,
    tol: BlockTolerances,
) -> Result<SlDecomposition> {
    check_bipartite("decompose_blocks", rho, dim_a, dim_e)?;
    let rho = DensityMatrix::new(rho.hermitian_part())?.into_matrix();
    let (d, f) = (dim_a, dim_e);
    let mut gamma = ComplexMatrix::zeros(d, d);
    let mut psi = Vec::with_capacity(d * d);
    let mut classes = Vec::with_capacity(d * d);
    for k in 0..d {
        for l in 0..d {
            let block = rho.block(k * f, l * f, f, f);
            let tr = block.trace();
            let (g, p, class) = if tr.norm() > tol.trace {
                (tr, block.scale(tr.inv()), PairClass::UnitTrace)
            } else if block.max_abs() > tol.zero {
                (C64::new(1.0, 0.0), block, PairClass::TracelessNonzero)
            } else {
                (C64::new(0.0, 0.0), ComplexMatrix::zeros(f, f), PairClass::ZeroBlock)
            };
            gamma[(k, l)] = g;
            psi.push(p);
            classes.push(class);
        }
    }
    Ok(SlDecomposition {
        dim_a,
        dim_e,
        gamma,
        psi,
        classes,
    })
}

/// SL iff no block is traceless but nonzero.
pub fn classify_sl(d: &SlDecomposition) -> SlClass {
    if d.classes.contains(&PairClass::TracelessNonzero) {
        SlClass::NonSl
    } else {
        SlClass::Sl
    }
}
