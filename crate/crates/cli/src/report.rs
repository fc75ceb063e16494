//! JSON views of the core results. Enum values use the upper-case names
//! printed in reports (`CP`, `NON_POSITIVE`, `VQD`, ...).

use inducedmap_core::discord::{DiscordStatus, DiscordVerdict};
use inducedmap_core::maps::BlockWeighting;
use inducedmap_core::maps::{CpStatus, CpVerdict, Positivity};
use inducedmap_core::search::{CandidateReport, Classification, SearchConfig, UnitaryFamily};
use inducedmap_core::states::{ConditionReport, ConditionWitness, Route, SlClass};
use serde::Serialize;

use crate::format::MatrixFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Weighting {
    Normalized,
    Unnormalized,
}

impl From<Weighting> for BlockWeighting {
    fn from(w: Weighting) -> Self {
        match w {
            Weighting::Normalized => BlockWeighting::Normalized,
            Weighting::Unnormalized => BlockWeighting::Unnormalized,
        }
    }
}

pub fn sl_class(c: SlClass) -> &'static str {
    match c {
        SlClass::Sl => "SL",
        SlClass::NonSl => "NON_SL",
    }
}

pub fn route(r: Route) -> &'static str {
    match r {
        Route::RescaledPsd => "RESCALED_PSD",
        Route::BlockProjector => "BLOCK_PROJECTOR",
    }
}

pub fn discord_status(s: DiscordStatus) -> &'static str {
    match s {
        DiscordStatus::Vqd => "VQD",
        DiscordStatus::Nonzero => "NONZERO",
        DiscordStatus::Indeterminate => "INDETERMINATE",
    }
}

pub fn cp_status(s: CpStatus) -> &'static str {
    match s {
        CpStatus::Cp => "CP",
        CpStatus::NotCp => "NOT_CP",
        CpStatus::NotCpAffine => "NOT_CP_AFFINE",
    }
}

pub fn classification(c: Classification) -> &'static str {
    match c {
        Classification::Cp => "CP",
        Classification::PositiveNotCpCandidate => "POSITIVE_NOT_CP_CANDIDATE",
        Classification::NonPositive => "NON_POSITIVE",
        Classification::Affine => "AFFINE",
        Classification::Borderline => "BORDERLINE",
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessJson {
    NonSl { row: usize, col: usize },
    Cancellation { term: usize, row: usize, col: usize },
    NotPsd { term: usize, min_eigenvalue: f64 },
    SupportOverlap { first: usize, second: usize, overlap: f64 },
}

impl From<&ConditionWitness> for WitnessJson {
    fn from(w: &ConditionWitness) -> Self {
        match *w {
            ConditionWitness::NonSl { row, col } => WitnessJson::NonSl { row, col },
            ConditionWitness::Cancellation { term, row, col } => WitnessJson::Cancellation { term, row, col },
            ConditionWitness::NotPsd { term, min_eigenvalue } => WitnessJson::NotPsd { term, min_eigenvalue },
            ConditionWitness::SupportOverlap { first, second, overlap } => {
                WitnessJson::SupportOverlap { first, second, overlap }
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConditionJson {
    pub holds: bool,
    pub indeterminate: bool,
    pub route: Vec<&'static str>,
    pub rescaled_min_eigenvalues: Option<Vec<f64>>,
    pub support_ranks: Vec<usize>,
    pub unassigned_dim: usize,
    pub witnesses: Vec<WitnessJson>,
}

impl From<&ConditionReport> for ConditionJson {
    fn from(r: &ConditionReport) -> Self {
        Self {
            holds: r.holds,
            indeterminate: r.indeterminate(),
            route: r.routes.iter().map(|&x| route(x)).collect(),
            rescaled_min_eigenvalues: r.rescaled_min_eigenvalues.clone(),
            support_ranks: r.support_ranks.clone(),
            unassigned_dim: r.unassigned_dim,
            witnesses: r.witnesses.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DiscordJson {
    pub status: &'static str,
    pub basis: Option<MatrixFile>,
    pub residual: f64,
}

impl From<&DiscordVerdict> for DiscordJson {
    fn from(v: &DiscordVerdict) -> Self {
        Self {
            status: discord_status(v.status),
            basis: v.basis.as_ref().map(Into::into),
            residual: v.residual,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CpJson {
    pub status: &'static str,
    pub choi_min_eigenvalue: f64,
    pub shift_norm: f64,
}

impl From<&CpVerdict> for CpJson {
    fn from(v: &CpVerdict) -> Self {
        Self {
            status: cp_status(v.status),
            choi_min_eigenvalue: v.choi_min_eigenvalue,
            shift_norm: v.shift_norm,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PositivityJson {
    pub verdict: &'static str,
    pub min_eigenvalue: f64,
    pub witness: Option<MatrixFile>,
}

impl From<&Positivity> for PositivityJson {
    fn from(p: &Positivity) -> Self {
        match p {
            Positivity::NoViolationFound { lowest_eigenvalue } => Self {
                verdict: "NO_VIOLATION_FOUND",
                min_eigenvalue: *lowest_eigenvalue,
                witness: None,
            },
            Positivity::Violated {
                witness,
                min_eigenvalue,
            } => Self {
                verdict: "VIOLATED",
                min_eigenvalue: *min_eigenvalue,
                witness: Some(witness.matrix().into()),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CandidateJson {
    pub trial: usize,
    pub classification: &'static str,
    pub choi_min_eigenvalue: f64,
    pub shift_norm: f64,
    pub positivity: PositivityJson,
    pub unitary: MatrixFile,
}

impl From<&CandidateReport> for CandidateJson {
    fn from(r: &CandidateReport) -> Self {
        Self {
            trial: r.trial,
            classification: classification(r.classification),
            choi_min_eigenvalue: r.choi_min_eigenvalue,
            shift_norm: r.shift_norm,
            positivity: (&r.positivity).into(),
            unitary: r.unitary.matrix().into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SearchConfigJson {
    pub family: &'static str,
    pub params: Option<Vec<f64>>,
    pub trials: usize,
    pub positivity_budget: usize,
    pub seed: u64,
    pub cp_tol: f64,
    pub positivity_tol: f64,
    pub candidate_tol: f64,
    pub weighting: Weighting,
}

impl From<&SearchConfig> for SearchConfigJson {
    fn from(c: &SearchConfig) -> Self {
        let (family, params) = match &c.family {
            UnitaryFamily::Haar => ("haar", None),
            UnitaryFamily::Generator(p) => ("generator", Some(p.clone())),
        };
        Self {
            family,
            params,
            trials: c.trials,
            positivity_budget: c.positivity_budget,
            seed: c.seed,
            cp_tol: c.tolerances.cp,
            positivity_tol: c.tolerances.positivity,
            candidate_tol: c.tolerances.candidate,
            weighting: match c.weighting {
                BlockWeighting::Normalized => Weighting::Normalized,
                BlockWeighting::Unnormalized => Weighting::Unnormalized,
            },
        }
    }
}
