//! Scanning joint unitaries for induced maps that are positive but not
//! completely positive.
//!
//! The recipe: start from an ensemble that satisfies the positivity
//! condition but has nonzero discord (zero-discord states only ever give CP
//! maps), then try many unitaries and keep the maps whose Choi matrix is
//! clearly indefinite while probing finds no positivity violation.

use alloc::vec::Vec;

use crate::discord::{has_vqd, DiscordStatus};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix, C64};
use crate::maps::{induce_with, is_cp, probe_positivity, BlockWeighting, JointUnitary, Positivity};
use crate::random;
use crate::states::{assemble, check_condition, decompose_blocks, SeparableEnsemble, SlDecomposition};

/// Haar-random joint unitary, reproducible from `seed`.
pub fn haar_unitary(dim_a: usize, dim_e: usize, seed: u64) -> JointUnitary {
    let u = random::haar_matrix(dim_a * dim_e, &mut random::rng(seed));
    JointUnitary::new(u, dim_a, dim_e).expect("Gram-Schmidt output is unitary")
}

/// Hermitian matrix from `dim²` reals: the `dim` diagonal entries first, then
/// `(re, im)` of each strictly-upper entry in row-major order.
pub fn hermitian_from_params(params: &[f64], dim: usize) -> Result<ComplexMatrix> {
    if params.len() != dim * dim {
        return Err(Error::ParamLength {
            expected: dim * dim,
            found: params.len(),
        });
    }
    let mut h = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        h[(i, i)] = C64::new(params[i], 0.0);
    }
    let mut rest = params[dim..].chunks_exact(2);
    for i in 0..dim {
        for j in i + 1..dim {
            let pair = rest.next().expect("length checked");
            h[(i, j)] = C64::new(pair[0], pair[1]);
            h[(j, i)] = C64::new(pair[0], -pair[1]);
        }
    }
    if h.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidConfig("generator parameters must be finite"));
    }
    Ok(h)
}

/// `exp(iH)` with `H` from [`hermitian_from_params`], computed through the
/// eigen-decomposition of `H`.
pub fn generator_unitary(params: &[f64], dim_a: usize, dim_e: usize) -> Result<JointUnitary> {
    let n = dim_a * dim_e;
    let h = hermitian_from_params(params, n)?;
    let spec = hermitian_eigen(&h, 0.0)?;
    let v = &spec.eigenvectors;
    let mut scaled = v.clone();
    for j in 0..n {
        let phase = C64::from_polar(1.0, spec.eigenvalues[j]);
        for i in 0..n {
            scaled[(i, j)] *= phase;
        }
    }
    JointUnitary::new(scaled.matmul(&v.adjoint())?, dim_a, dim_e)
}

#[derive(Debug, Clone, PartialEq)]
pub enum UnitaryFamily {
    Haar,
    /// `exp(iH(params))`; trial `t` of `T` uses `params · (t+1)/T`, scanning
    /// the ray from the identity towards the given generator.
    Generator(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchTolerances {
    /// Choi eigenvalue and shift tolerance for calling a map CP.
    pub cp: f64,
    /// Output eigenvalue below `-positivity` counts as a violation.
    pub positivity: f64,
    /// Choi eigenvalue below `-candidate` is needed to report a candidate.
    pub candidate: f64,
}

impl Default for SearchTolerances {
    fn default() -> Self {
        Self {
            cp: 1e-9,
            positivity: 1e-9,
            candidate: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub family: UnitaryFamily,
    pub trials: usize,
    pub positivity_budget: usize,
    pub seed: u64,
    pub tolerances: SearchTolerances,
    pub weighting: BlockWeighting,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            family: UnitaryFamily::Haar,
            trials: 1000,
            positivity_budget: 500,
            seed: 0,
            tolerances: SearchTolerances::default(),
            weighting: BlockWeighting::Normalized,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1"));
        }
        if self.positivity_budget == 0 {
            return Err(Error::InvalidConfig("positivity budget must be at least 1"));
        }
        Ok(())
    }

    /// Unitary tried in trial `t`.
    pub fn unitary(&self, dim_a: usize, dim_e: usize, t: usize) -> Result<JointUnitary> {
        match &self.family {
            UnitaryFamily::Haar => Ok(haar_unitary(dim_a, dim_e, random::derive_seed(self.seed, 2 * t as u64))),
            UnitaryFamily::Generator(params) => {
                let s = (t + 1) as f64 / self.trials as f64;
                let scaled: Vec<f64> = params.iter().map(|p| p * s).collect();
                generator_unitary(&scaled, dim_a, dim_e)
            }
        }
    }

    fn probe_seed(&self, t: usize) -> u64 {
        random::derive_seed(self.seed, 2 * t as u64 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Choi PSD and no shift.
    Cp,
    /// Choi clearly indefinite, no shift, no violation within budget.
    PositiveNotCpCandidate,
    /// A certified input maps to a non-PSD output.
    NonPositive,
    /// Nonzero shift term, no violation found.
    Affine,
    /// Choi minimum between `-candidate` and `-cp`: too close to call.
    Borderline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateReport {
    pub trial: usize,
    pub unitary: JointUnitary,
    pub choi_min_eigenvalue: f64,
    pub shift_norm: f64,
    pub positivity: Positivity,
    pub classification: Classification,
}

/// Induces, tests and classifies the map of `d` under `u`, probing
/// positivity with `cfg.seed`.
pub fn classify(d: &SlDecomposition, u: &JointUnitary, cfg: &SearchConfig) -> Result<CandidateReport> {
    classify_seeded(d, u, cfg, cfg.seed, 0)
}

fn classify_seeded(
    d: &SlDecomposition,
    u: &JointUnitary,
    cfg: &SearchConfig,
    probe_seed: u64,
    trial: usize,
) -> Result<CandidateReport> {
    let tol = cfg.tolerances;
    let map = induce_with(d, u, cfg.weighting)?;
    let cp = is_cp(&map, tol.cp)?;
    let positivity = probe_positivity(&map, cfg.positivity_budget, probe_seed, tol.positivity)?;
    let classification = if positivity.is_violated() {
        Classification::NonPositive
    } else if cp.shift_norm > tol.cp {
        Classification::Affine
    } else if cp.choi_min_eigenvalue >= -tol.cp {
        Classification::Cp
    } else if cp.choi_min_eigenvalue < -tol.candidate {
        Classification::PositiveNotCpCandidate
    } else {
        Classification::Borderline
    };
    Ok(CandidateReport {
        trial,
        unitary: u.clone(),
        choi_min_eigenvalue: cp.choi_min_eigenvalue,
        shift_norm: cp.shift_norm,
        positivity,
        classification,
    })
}

/// Runs trial `t` of a search: draws its unitary and classifies the map.
pub fn run_trial(d: &SlDecomposition, cfg: &SearchConfig, t: usize) -> Result<CandidateReport> {
    let u = cfg.unitary(d.dim_a(), d.dim_e(), t)?;
    classify_seeded(d, &u, cfg, cfg.probe_seed(t), t)
}

/// Checks the recipe's preconditions and returns the decomposition to search
/// over: the condition must hold and the state must not have zero discord
/// (an indeterminate discord verdict is allowed).
pub fn prepare_hunt(e: &SeparableEnsemble, cfg: &SearchConfig) -> Result<SlDecomposition> {
    cfg.validate()?;
    if let UnitaryFamily::Generator(p) = &cfg.family {
        let n = e.dim_a() * e.dim_e();
        if p.len() != n * n {
            return Err(Error::ParamLength {
                expected: n * n,
                found: p.len(),
            });
        }
    }
    if !check_condition(e, cfg.tolerances.cp)?.holds {
        return Err(Error::PreconditionTheorem);
    }
    let rho = assemble(e);
    let vqd = has_vqd(&rho, e.dim_a(), e.dim_e(), crate::HERMITIAN_TOL, cfg.seed)?;
    if vqd.status == DiscordStatus::Vqd {
        return Err(Error::PreconditionVqd);
    }
    decompose_blocks(&rho, e.dim_a(), e.dim_e())
}

/// Keeps the positive-not-CP candidates, most negative Choi eigenvalue first
/// (ties by trial index).
pub fn select_candidates(reports: impl IntoIterator<Item = CandidateReport>) -> Vec<CandidateReport> {
    let mut out: Vec<CandidateReport> = reports
        .into_iter()
        .filter(|r| r.classification == Classification::PositiveNotCpCandidate)
        .collect();
    out.sort_by(|a, b| {
        a.choi_min_eigenvalue
            .total_cmp(&b.choi_min_eigenvalue)
            .then(a.trial.cmp(&b.trial))
    });
    out
}

/// Runs `cfg.trials` classifications and returns the candidates.
/// Deterministic for a given ensemble and config.
pub fn hunt(e: &SeparableEnsemble, cfg: &SearchConfig) -> Result<Vec<CandidateReport>> {
    let d = prepare_hunt(e, cfg)?;
    let reports = (0..cfg.trials)
        .map(|t| run_trial(&d, cfg, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(select_candidates(reports))
}
