//! Reproduction fixtures: the `4 ⊗ f` block example and the Bell state
//! evolved by a CNOT.

use inducedmap_core::discord::has_vqd;
use inducedmap_core::maps::{induce_with, is_cp, probe_positivity, BlockWeighting, CpStatus, JointUnitary};
use inducedmap_core::states::{
    assemble, check_condition, classify_sl, decompose_blocks, fixtures, rescaled_matrices, DensityMatrix, Route,
    SlClass,
};
use inducedmap_core::{hermitian_eigen, ComplexMatrix, C64};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::MatrixFile;
use crate::report::{self, ConditionJson, CpJson, DiscordJson, PositivityJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fixture {
    #[value(name = "example-4xf")]
    Example4xf,
    #[value(name = "bell-cnot")]
    BellCnot,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct ReproReport {
    pub fixture: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: Value,
}

impl ReproReport {
    fn new(fixture: &'static str, checks: Vec<Check>, data: Value) -> Self {
        Self {
            fixture,
            pass: checks.iter().all(|c| c.pass),
            checks,
            data,
        }
    }
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn min_eig(m: &ComplexMatrix) -> Result<f64, CliError> {
    Ok(hermitian_eigen(m, inducedmap_core::HERMITIAN_TOL)?.min())
}

/// Re-scaled matrices of the two-block ensemble with weights `p1`, `1 − p1`.
pub fn example_4xf(p1: f64) -> Result<ReproReport, CliError> {
    if !(p1 > 0.0 && p1 < 1.0) {
        return Err(CliError::Usage(format!(
            "--p1 must lie strictly between 0 and 1 (got {p1})"
        )));
    }
    let p2 = 1.0 - p1;
    let e = fixtures::block_example(p1)?;
    let rs = rescaled_matrices(&e)?;
    let mut checks = Vec::new();
    let mut mins = Vec::new();
    for (i, (r, (lo, p))) in rs.matrices.iter().zip([(0, p1), (2, p2)]).enumerate() {
        let mut expect = ComplexMatrix::zeros(4, 4);
        for k in lo..lo + 2 {
            for l in lo..lo + 2 {
                expect[(k, l)] = C64::new(1.0 / p, 0.0);
            }
        }
        let diff = r.max_abs_diff(&expect);
        checks.push(check(
            if i == 0 {
                "rescaled_1_entries"
            } else {
                "rescaled_2_entries"
            },
            diff <= 1e-12,
            format!("max deviation from 1/p on the block, 0 elsewhere: {diff:e}"),
        ));
        let m = min_eig(r)?;
        checks.push(check(
            if i == 0 { "rescaled_1_psd" } else { "rescaled_2_psd" },
            m >= -1e-12,
            format!("min eigenvalue {m}"),
        ));
        mins.push(m);
    }
    let cond = check_condition(&e, 1e-9)?;
    checks.push(check(
        "condition_both_routes",
        cond.holds && cond.routes.contains(&Route::RescaledPsd) && cond.routes.contains(&Route::BlockProjector),
        format!(
            "routes {:?}",
            cond.routes.iter().map(|&r| report::route(r)).collect::<Vec<_>>()
        ),
    ));
    let vqd = has_vqd(&assemble(&e), 4, 2, inducedmap_core::HERMITIAN_TOL, 0)?;
    let data = json!({
        "p1": p1,
        "p2": p2,
        "rescaled": rs.matrices.iter().map(MatrixFile::from).collect::<Vec<_>>(),
        "rescaled_min_eigenvalues": mins,
        "marginal": MatrixFile::from(&e.marginal()),
        "condition": ConditionJson::from(&cond),
        "vqd": DiscordJson::from(&vqd),
    });
    Ok(ReproReport::new("example-4xf", checks, data))
}

/// Bell state `(|00⟩+|11⟩)/√2` evolved by a CNOT, input `|0⟩⟨0|`.
///
/// The output `½[[1,1],[1,0]]` arises with raw-block (unnormalized)
/// weighting; the normalized weighting is reported alongside.
pub fn bell_cnot() -> Result<ReproReport, CliError> {
    let d = decompose_blocks(&fixtures::bell_state(), 2, 2)?;
    let u = JointUnitary::cnot();
    let input = DensityMatrix::new(ComplexMatrix::unit(2, 0, 0))?;
    let mut checks = Vec::new();

    let sl = classify_sl(&d);
    checks.push(check("non_sl", sl == SlClass::NonSl, report::sl_class(sl).into()));

    let m = induce_with(&d, &u, BlockWeighting::Unnormalized)?;
    let out = m.apply(&input)?;
    let expect = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.0]])?;
    let diff = out.max_abs_diff(&expect);
    checks.push(check(
        "output_matrix",
        diff <= 1e-12,
        format!("max deviation from ½[[1,1],[1,0]]: {diff:e}"),
    ));
    let lam = min_eig(&out)?;
    let lam_expect = (1.0 - 5f64.sqrt()) / 4.0;
    checks.push(check(
        "output_min_eigenvalue",
        (lam - lam_expect).abs() <= 1e-10,
        format!("{lam} vs (1-√5)/4 = {lam_expect}"),
    ));
    let cp = is_cp(&m, 1e-9)?;
    checks.push(check(
        "not_cp_affine",
        cp.status == CpStatus::NotCpAffine,
        format!("{} with shift norm {}", report::cp_status(cp.status), cp.shift_norm),
    ));
    let probe = probe_positivity(&m, 500, 0, 1e-9)?;
    checks.push(check(
        "positivity_violated",
        probe.is_violated(),
        format!("lowest output eigenvalue {}", probe.lowest_eigenvalue()),
    ));

    let mn = induce_with(&d, &u, BlockWeighting::Normalized)?;
    let out_n = mn.apply(&input)?;
    let lam_n = min_eig(&out_n)?;
    let data = json!({
        "input": MatrixFile::from(input.matrix()),
        "output": MatrixFile::from(&out),
        "output_min_eigenvalue": lam,
        "expected_min_eigenvalue": lam_expect,
        "cp": CpJson::from(&cp),
        "positivity": PositivityJson::from(&probe),
        "normalized": {
            "output": MatrixFile::from(&out_n),
            "output_min_eigenvalue": lam_n,
            "cp": CpJson::from(&is_cp(&mn, 1e-9)?),
        },
    });
    Ok(ReproReport::new("bell-cnot", checks, data))
}

pub fn run(fixture: Fixture, p1: f64) -> Result<ReproReport, CliError> {
    match fixture {
        Fixture::Example4xf => example_4xf(p1),
        Fixture::BellCnot => bell_cnot(),
    }
}
