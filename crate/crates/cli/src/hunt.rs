//! Parallel driver for the unitary search.

use std::collections::BTreeMap;

use inducedmap_core::search::{prepare_hunt, run_trial, select_candidates, CandidateReport, SearchConfig};
use inducedmap_core::states::SeparableEnsemble;
use rayon::prelude::*;

use crate::error::CliError;
use crate::report;

#[derive(Debug, Clone)]
pub struct HuntOutcome {
    pub candidates: Vec<CandidateReport>,
    /// Number of trials per classification.
    pub counts: BTreeMap<&'static str, usize>,
}

/// Same result as [`inducedmap_core::search::hunt`], with trials spread over
/// a rayon pool (`threads = None` uses the global pool). Reports are
/// collected in trial order, so the outcome does not depend on scheduling.
pub fn par_hunt(e: &SeparableEnsemble, cfg: &SearchConfig, threads: Option<usize>) -> Result<HuntOutcome, CliError> {
    let d = prepare_hunt(e, cfg)?;
    let run = || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(&d, cfg, t))
            .collect::<Result<Vec<_>, _>>()
    };
    let reports = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|err| CliError::Usage(format!("thread pool: {err}")))?
            .install(run)?,
        None => run()?,
    };
    let mut counts = BTreeMap::new();
    for r in &reports {
        *counts.entry(report::classification(r.classification)).or_insert(0) += 1;
    }
    Ok(HuntOutcome {
        candidates: select_candidates(reports),
        counts,
    })
}
