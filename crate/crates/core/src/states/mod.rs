//! Joint system-environment states: separable ensembles, environment-block
//! decomposition and the sufficient condition for positive induced maps.

mod condition;
mod decomposition;
mod density;
mod ensemble;

pub use condition::{
    check_condition, component_images, rescaled_matrices, ConditionReport, ConditionWitness, RescaledSet, Route,
    ORTHOGONALITY_TOL, RATIO_ZERO_TOL, SUPPORT_CUTOFF,
};
pub use decomposition::{
    classify_sl, decompose_blocks, decompose_blocks_with, BlockTolerances, PairClass, SlClass, SlDecomposition,
};
pub use density::{DensityMatrix, DENSITY_TOL};
pub use ensemble::{assemble, EnsembleTerm, SeparableEnsemble};

/// Ready-made ensembles used by the reproduction fixtures and tests.
pub mod fixtures {
    use super::SeparableEnsemble;
    use crate::error::Result;
    use crate::linalg::{ComplexMatrix, C64};

    /// Embeds a 2x2 matrix into the diagonal block starting at `offset` of a
    /// `dim x dim` zero matrix.
    pub fn embed_block(m: &ComplexMatrix, dim: usize, offset: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(dim, dim);
        out.set_block(offset, offset, m);
        out
    }

    /// Two-term `4 ⊗ 2` ensemble with `|+⟩⟨+|` on levels {0,1} and `|−⟩⟨−|`
    /// on levels {2,3}, environments `|0⟩⟨0|` and `|1⟩⟨1|`.
    pub fn block_example(p1: f64) -> Result<SeparableEnsemble> {
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])?;
        let minus = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]])?;
        SeparableEnsemble::from_matrices(
            4,
            2,
            [
                (p1, embed_block(&plus, 4, 0), ComplexMatrix::unit(2, 0, 0)),
                (1.0 - p1, embed_block(&minus, 4, 2), ComplexMatrix::unit(2, 1, 1)),
            ],
        )
    }

    /// Classical-quantum `2 ⊗ 2` ensemble `½|0⟩⟨0|⊗|0⟩⟨0| + ½|1⟩⟨1|⊗|+⟩⟨+|`.
    pub fn classical_quantum() -> Result<SeparableEnsemble> {
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])?;
        SeparableEnsemble::from_matrices(
            2,
            2,
            [
                (0.5, ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 0, 0)),
                (0.5, ComplexMatrix::unit(2, 1, 1), plus),
            ],
        )
    }

    /// `½|+⟩⟨+|⊗|0⟩⟨0| + ½|0⟩⟨0|⊗|1⟩⟨1|`: components with overlapping supports.
    pub fn overlapping() -> Result<SeparableEnsemble> {
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])?;
        SeparableEnsemble::from_matrices(
            2,
            2,
            [
                (0.5, plus, ComplexMatrix::unit(2, 0, 0)),
                (0.5, ComplexMatrix::unit(2, 0, 0), ComplexMatrix::unit(2, 1, 1)),
            ],
        )
    }

    /// The Bell state `(|00⟩ + |11⟩)/√2` as a density matrix.
    pub fn bell_state() -> ComplexMatrix {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let z = C64::new(0.0, 0.0);
        ComplexMatrix::outer(&[C64::new(s, 0.0), z, z, C64::new(s, 0.0)])
    }
}
