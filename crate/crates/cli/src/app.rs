use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use inducedmap_core::discord::{has_vqd, DiscordStatus};
use inducedmap_core::hermitian_eigen;
use inducedmap_core::maps::{choi, induce_with, JointUnitary};
use inducedmap_core::search::{classify, SearchConfig, SearchTolerances, UnitaryFamily};
use inducedmap_core::states::{check_condition, classify_sl, decompose_blocks, DensityMatrix};
use serde::Serialize;
use serde_json::json;

use crate::error::{exit, CliError};
use crate::format::{read_json, to_json, write_json, EnsembleFile, MatrixFile, StateFile};
use crate::hunt::par_hunt;
use crate::report::{
    self, CandidateJson, ConditionJson, CpJson, DiscordJson, PositivityJson, SearchConfigJson, Weighting,
};
use crate::repro::{self, Fixture};

#[derive(Debug, Parser)]
#[command(
    name = "inducedmap",
    version,
    about = "Induced dynamical maps of open quantum systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the positivity condition and zero discord of an ensemble.
    Check(CheckArgs),
    /// Induce the map of a state under a joint unitary and classify it.
    Induce(InduceArgs),
    /// Test a joint state for zero discord on the system side.
    Discord(DiscordArgs),
    /// Search joint unitaries for positive maps that are not CP.
    Hunt(HuntArgs),
    /// Regenerate a reference example and check it.
    Repro(ReproArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Ensemble file.
    pub ensemble: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for the discord probes.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct InduceArgs {
    /// Initial state: ensemble or joint density matrix file.
    pub state: PathBuf,
    /// Joint unitary (matrix file).
    pub unitary: PathBuf,
    /// System input ρ' to apply the map to (matrix file).
    pub input: Option<PathBuf>,
    /// Write the map output to this matrix file.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the Choi matrix to this matrix file.
    #[arg(long)]
    pub choi: Option<PathBuf>,
    /// Random pure inputs tried by the positivity probe.
    #[arg(long, default_value_t = 500)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CP and positivity tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Weighting::Normalized)]
    pub weighting: Weighting,
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    /// Ensemble or joint density matrix file.
    pub state: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Haar,
    Generator,
}

#[derive(Debug, Args)]
pub struct HuntArgs {
    /// Ensemble file.
    pub ensemble: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 500)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Family::Haar)]
    pub family: Family,
    /// JSON array of generator parameters (required with `--family generator`).
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// CP and positivity tolerance.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Choi eigenvalue below minus this is reported as a candidate.
    #[arg(long, default_value_t = 1e-6)]
    pub candidate_tol: f64,
    #[arg(long, value_enum, default_value_t = Weighting::Normalized)]
    pub weighting: Weighting,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    #[arg(value_enum)]
    pub fixture: Fixture,
    /// Weight of the first component in `example-4xf`.
    #[arg(long, default_value_t = 0.5)]
    pub p1: f64,
}

/// Parses `args` (program name first), runs the command, writes the JSON
/// report to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    exit::OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    exit::USAGE
                }
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((report, code)) => {
            let _ = writeln!(out, "{report}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<(String, i32), CliError> {
    match cmd {
        Command::Check(a) => check(a),
        Command::Induce(a) => induce(a),
        Command::Discord(a) => discord(a),
        Command::Hunt(a) => hunt(a),
        Command::Repro(a) => {
            let r = repro::run(a.fixture, a.p1)?;
            let code = if r.pass { exit::OK } else { exit::ASSERTION_FAILED };
            Ok((to_json(&r), code))
        }
    }
}

fn tolerance(tol: f64) -> Result<f64, CliError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!(
            "tolerance must be finite and non-negative (got {tol})"
        )))
    }
}

#[derive(Serialize)]
struct CheckReport {
    command: &'static str,
    config: serde_json::Value,
    sl_class: &'static str,
    condition: ConditionJson,
    vqd: DiscordJson,
}

fn check(a: CheckArgs) -> Result<(String, i32), CliError> {
    let tol = tolerance(a.tol)?;
    let e = read_json::<EnsembleFile>(&a.ensemble)?.to_ensemble()?;
    let cond = check_condition(&e, tol)?;
    let rho = inducedmap_core::states::assemble(&e);
    let vqd = has_vqd(&rho, e.dim_a(), e.dim_e(), tol, a.seed)?;
    let code = if cond.holds {
        exit::OK
    } else if cond.indeterminate() {
        exit::INDETERMINATE
    } else {
        exit::CONDITION_FAILS
    };
    let report = CheckReport {
        command: "check",
        config: json!({ "ensemble": a.ensemble, "tol": tol, "seed": a.seed }),
        sl_class: report::sl_class(cond.sl_class),
        condition: (&cond).into(),
        vqd: (&vqd).into(),
    };
    Ok((to_json(&report), code))
}

#[derive(Serialize)]
struct InduceReport {
    command: &'static str,
    config: serde_json::Value,
    sl_class: &'static str,
    output: Option<MatrixFile>,
    output_min_eigenvalue: Option<f64>,
    cp: CpJson,
    positivity: PositivityJson,
    classification: &'static str,
}

fn induce(a: InduceArgs) -> Result<(String, i32), CliError> {
    let tol = tolerance(a.tol)?;
    let state = read_json::<StateFile>(&a.state)?.load()?;
    let u = JointUnitary::new(
        read_json::<MatrixFile>(&a.unitary)?.to_matrix()?,
        state.dim_a,
        state.dim_e,
    )?;
    let d = decompose_blocks(&state.rho, state.dim_a, state.dim_e)?;
    let cfg = SearchConfig {
        family: UnitaryFamily::Haar,
        trials: 1,
        positivity_budget: a.budget,
        seed: a.seed,
        tolerances: SearchTolerances {
            cp: tol,
            positivity: tol,
            ..SearchTolerances::default()
        },
        weighting: a.weighting.into(),
    };
    cfg.validate()?;
    let map = induce_with(&d, &u, cfg.weighting)?;
    let (output, output_min_eigenvalue) = match &a.input {
        Some(path) => {
            let rho_p = DensityMatrix::new(read_json::<MatrixFile>(path)?.to_matrix()?)?;
            let out = map.apply(&rho_p)?;
            let lam = hermitian_eigen(&out.hermitian_part(), f64::INFINITY)?.min();
            if let Some(p) = &a.output {
                write_json(p, &MatrixFile::from(&out))?;
            }
            (Some(MatrixFile::from(&out)), Some(lam))
        }
        None if a.output.is_some() => {
            return Err(CliError::Usage("--output needs an input matrix".into()));
        }
        None => (None, None),
    };
    if let Some(p) = &a.choi {
        write_json(p, &MatrixFile::from(choi(&map).matrix()))?;
    }
    let r = classify(&d, &u, &cfg)?;
    let cp = inducedmap_core::maps::is_cp(&map, tol)?;
    let report = InduceReport {
        command: "induce",
        config: json!({
            "state": a.state,
            "unitary": a.unitary,
            "input": a.input,
            "budget": a.budget,
            "seed": a.seed,
            "tol": tol,
            "weighting": a.weighting,
        }),
        sl_class: report::sl_class(classify_sl(&d)),
        output,
        output_min_eigenvalue,
        cp: (&cp).into(),
        positivity: (&r.positivity).into(),
        classification: report::classification(r.classification),
    };
    Ok((to_json(&report), exit::OK))
}

fn discord(a: DiscordArgs) -> Result<(String, i32), CliError> {
    let tol = tolerance(a.tol)?;
    let state = read_json::<StateFile>(&a.state)?.load()?;
    let v = has_vqd(&state.rho, state.dim_a, state.dim_e, tol, a.seed)?;
    let code = if v.status == DiscordStatus::Indeterminate {
        exit::INDETERMINATE
    } else {
        exit::OK
    };
    let report = json!({
        "command": "discord",
        "config": { "state": a.state, "tol": tol, "seed": a.seed },
        "vqd": DiscordJson::from(&v),
    });
    Ok((to_json(&report), code))
}

fn hunt(a: HuntArgs) -> Result<(String, i32), CliError> {
    let tol = tolerance(a.tol)?;
    let candidate = tolerance(a.candidate_tol)?;
    let family = match (a.family, &a.params) {
        (Family::Haar, None) => UnitaryFamily::Haar,
        (Family::Generator, Some(p)) => UnitaryFamily::Generator(read_json::<Vec<f64>>(p)?),
        (Family::Haar, Some(_)) => return Err(CliError::Usage("--params applies to --family generator".into())),
        (Family::Generator, None) => return Err(CliError::Usage("--family generator needs --params".into())),
    };
    if a.threads == Some(0) {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let e = read_json::<EnsembleFile>(&a.ensemble)?.to_ensemble()?;
    let cfg = SearchConfig {
        family,
        trials: a.trials,
        positivity_budget: a.budget,
        seed: a.seed,
        tolerances: SearchTolerances {
            cp: tol,
            positivity: tol,
            candidate,
        },
        weighting: a.weighting.into(),
    };
    let outcome = par_hunt(&e, &cfg, a.threads)?;
    let report = json!({
        "command": "hunt",
        "config": { "ensemble": a.ensemble, "search": SearchConfigJson::from(&cfg) },
        "counts": outcome.counts,
        "candidates": outcome.candidates.iter().map(CandidateJson::from).collect::<Vec<_>>(),
    });
    Ok((to_json(&report), exit::OK))
}
