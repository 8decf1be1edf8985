//! Implementations of the five verbs.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;

use evosim_core::experiments::{self, run_trials, summarize, SummaryStats};
use evosim_core::markov::{
    build_chain, check_drift_bounds, check_negative_drift, drift_profile, expected_hitting_times,
    DistanceMeasure, NegativeDriftParams,
};
use evosim_core::verify::{all_suites, SuiteOutcome};

use crate::output;
use crate::spec::{resolve_run, RunSpec, SweepFileSpec};
use crate::{CliError, EXIT_VERIFY};

/// Shared flag surface for commands that bind one algorithm configuration.
#[derive(Debug, Args)]
pub struct ConfigFlags {
    /// JSON config file with the same keys as the flags (flags win).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Algorithm: sswm | ea.
    #[arg(long)]
    pub algo: Option<String>,
    /// Fitness function: onemax | cliff | balance.
    #[arg(long)]
    pub fitness: Option<String>,
    /// Problem size (bits).
    #[arg(long)]
    pub n: Option<usize>,
    /// Cliff valley width (cliff only).
    #[arg(long)]
    pub d: Option<usize>,
    /// Mutation operator: local | global.
    #[arg(long)]
    pub mutation: Option<String>,
    /// Selection strength β (sswm).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Product Nβ, or `auto` for ½ln(11n) (sswm).
    #[arg(long)]
    pub nbeta: Option<String>,
    /// Population size N; alternative to --nbeta (sswm).
    #[arg(long)]
    pub npop: Option<f64>,
    /// Reject β outside (0, 1].
    #[arg(long)]
    pub strict_beta: bool,
}

impl ConfigFlags {
    fn as_spec(&self) -> RunSpec {
        RunSpec {
            algo: self.algo.clone(),
            fitness: self.fitness.clone(),
            n: self.n,
            d: self.d,
            mutation: self.mutation.clone(),
            beta: self.beta,
            nbeta: self.nbeta.clone(),
            npop: self.npop,
            strict_beta: self.strict_beta.then_some(true),
            ..RunSpec::default()
        }
    }

    fn load_merged(&self, extra: RunSpec) -> Result<RunSpec, CliError> {
        let base = match &self.config {
            Some(path) => RunSpec::load(path)?,
            None => RunSpec::default(),
        };
        let flags = self.as_spec().overlaid(extra);
        Ok(base.overlaid(flags))
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub config: ConfigFlags,
    /// Number of independent trials.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Generation budget: a formula of n, e.g. "50*n*ln(n)".
    #[arg(long)]
    pub budget: Option<String>,
    /// Master seed (default: $EVOSIM_SEED, then 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Force the initial point (0/1 string of length n).
    #[arg(long)]
    pub initial: Option<String>,
    /// Cap on parallel trial workers (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Trial CSV destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary JSON destination (default: one line on stderr).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct RunReport<'a> {
    config: &'a RunSpec,
    summary: &'a SummaryStats,
}

fn in_worker_pool<T: Send>(
    workers: Option<usize>,
    work: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match workers {
        None => Ok(work()),
        Some(0) => Err(CliError::Usage("--workers must be ≥ 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            Ok(pool.install(work))
        }
    }
}

pub fn run(args: RunArgs) -> Result<ExitCode, CliError> {
    let overlay = RunSpec {
        trials: args.trials,
        budget: args.budget.clone(),
        seed: args.seed,
        initial: args.initial.clone(),
        workers: args.workers,
        ..RunSpec::default()
    };
    let merged = args.config.load_merged(overlay)?;
    let resolved = resolve_run(merged)?;
    output::echo_config(&resolved.echo)?;

    let records = in_worker_pool(resolved.workers, || {
        run_trials(
            &resolved.config,
            resolved.trials,
            resolved.budget,
            resolved.seed,
            resolved.initial.as_ref(),
        )
    })?;
    let summary = summarize(&records)?;

    let writer = output::table_writer(args.out.as_ref())?;
    output::write_trials_csv(writer, &resolved.config, &records)?;
    output::emit_json(
        &RunReport {
            config: &resolved.echo,
            summary: &summary,
        },
        args.summary.as_ref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep specification (JSON); see README for the schema.
    #[arg(long)]
    pub config: PathBuf,
    /// Master seed override (default: file, then $EVOSIM_SEED, then 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cap on parallel workers.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Per-trial CSV destination (default: none).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-cell summary JSON destination (default: stdout).
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct SweepReportJson<'a> {
    config: &'a SweepFileSpec,
    cells: &'a [experiments::CellResult],
    skipped: &'a [experiments::SkippedCell],
}

pub fn sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut file_spec: SweepFileSpec = serde_json::from_str(&text)?;
    if args.seed.is_some() {
        file_spec.seed = args.seed;
    }
    if args.workers.is_some() {
        file_spec.workers = args.workers;
    }
    let seed = file_spec.seed.or_else(crate::spec::env_seed).unwrap_or(0);
    file_spec.seed = Some(seed);
    output::echo_config(&file_spec)?;

    let report = in_worker_pool(file_spec.workers, || {
        experiments::sweep(&file_spec.grid, seed)
    })??;
    for skip in &report.skipped {
        eprintln!("warning: cell {} skipped: {}", skip.cell_index, skip.reason);
    }

    if let Some(out) = &args.out {
        let writer = output::table_writer(Some(out))?;
        write_sweep_trials(writer, &report)?;
    }
    let json = SweepReportJson {
        config: &file_spec,
        cells: &report.cells,
        skipped: &report.skipped,
    };
    match args.summary.as_ref() {
        Some(path) => output::emit_json(&json, Some(path))?,
        None => {
            // Summary is the sweep's primary output: stdout, pretty.
            let text = serde_json::to_string_pretty(&json)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            println!("{text}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_sweep_trials(
    w: impl std::io::Write,
    report: &experiments::SweepReport,
) -> Result<(), CliError> {
    let mut csv = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    let mut header = vec!["cell_index"];
    header.extend(output::TRIAL_COLUMNS);
    csv.write_record(&header)?;
    for cell in &report.cells {
        for r in &cell.records {
            let stats = r.trajectory_stats.as_ref();
            csv.write_record([
                cell.cell.cell_index.to_string(),
                r.trial_id.to_string(),
                format!("{:?}", cell.cell.algo).to_lowercase(),
                format!("{:?}", cell.cell.fitness).to_lowercase(),
                cell.cell.n.to_string(),
                cell.cell.d.map(|d| d.to_string()).unwrap_or_default(),
                cell.cell.beta.map(|b| b.to_string()).unwrap_or_default(),
                cell.cell.npop.map(|v| v.to_string()).unwrap_or_default(),
                cell.cell.mutation.name().to_string(),
                r.seed.to_string(),
                r.generations.to_string(),
                r.success.to_string(),
                format!("{}", r.final_fitness),
                stats
                    .map(|s| s.lo_decrease_events.to_string())
                    .unwrap_or_default(),
                stats.map(|s| s.hit_trap.to_string()).unwrap_or_default(),
            ])?;
        }
    }
    csv.flush()?;
    Ok(())
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub config: ConfigFlags,
    /// Table destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exact and drift share the chain setup; they only need a dummy budget.
fn resolve_chain_spec(flags: &ConfigFlags) -> Result<crate::spec::ResolvedRun, CliError> {
    let defaults = RunSpec {
        budget: Some("1".into()),
        ..RunSpec::default()
    };
    let merged = defaults.overlaid(flags.load_merged(RunSpec::default())?);
    resolve_run(merged)
}

pub fn exact(args: ExactArgs) -> Result<ExitCode, CliError> {
    let resolved = resolve_chain_spec(&args.config)?;
    output::echo_config(&resolved.echo)?;
    let chain = build_chain(&resolved.config)?;
    let times = expected_hitting_times(&chain)?;
    let profile = drift_profile(&chain);
    let writer = output::table_writer(args.out.as_ref())?;
    output::write_chain_csv(writer, &chain, &profile, Some(&times))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args)]
pub struct DriftArgs {
    #[command(flatten)]
    pub config: ConfigFlags,
    /// Table destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also check the negative-drift conditions on the zeros interval `A:B`.
    #[arg(long, value_name = "A:B")]
    pub negative_drift: Option<String>,
    /// Negative-drift ε.
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Negative-drift r.
    #[arg(long, default_value_t = 2.0)]
    pub r: f64,
    /// Negative-drift δ.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
}

#[derive(Debug, Serialize)]
struct DriftReportJson<'a> {
    bounds: &'a evosim_core::markov::DriftBoundsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    negative_drift: Option<&'a evosim_core::markov::NegativeDriftReport>,
}

pub fn drift(args: DriftArgs) -> Result<ExitCode, CliError> {
    let resolved = resolve_chain_spec(&args.config)?;
    output::echo_config(&resolved.echo)?;
    let chain = build_chain(&resolved.config)?;
    let profile = drift_profile(&chain);
    // The hitting-time column stays empty when the optimum is unreachable
    // (the drift columns are still well defined).
    let times = match expected_hitting_times(&chain) {
        Ok(t) => Some(t),
        Err(e) => {
            eprintln!("warning: hitting times unavailable: {e}");
            None
        }
    };

    let bounds = check_drift_bounds(&chain);
    if let Some(reason) = &bounds.skip_reason {
        eprintln!("note: drift-bound checks skipped: {reason}");
    }

    let negative = args
        .negative_drift
        .as_deref()
        .map(|interval| -> Result<_, CliError> {
            let (a, b) = interval
                .split_once(':')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "--negative-drift: expected `A:B` with integers, got `{interval}`"
                    ))
                })?;
            Ok(check_negative_drift(
                &chain,
                &NegativeDriftParams {
                    a,
                    b,
                    epsilon: args.epsilon,
                    r: args.r,
                    delta: args.delta,
                    distance: DistanceMeasure::Zeros,
                },
            )?)
        })
        .transpose()?;

    let writer = output::table_writer(args.out.as_ref())?;
    output::write_chain_csv(writer, &chain, &profile, times.as_deref())?;
    output::emit_json(
        &DriftReportJson {
            bounds: &bounds,
            negative_drift: negative.as_ref(),
        },
        None,
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Which suites: all | selection | mutation | drift.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let outcomes: Vec<SuiteOutcome> = match args.suite.as_str() {
        "all" => all_suites(),
        "selection" => vec![evosim_core::verify::suite_selection_bounds()],
        "mutation" => vec![
            evosim_core::verify::suite_mutation_oracle(),
            evosim_core::verify::suite_row_stochastic(),
            evosim_core::verify::suite_jump_bounds(),
            evosim_core::verify::suite_geometric_decay(),
            evosim_core::verify::suite_conditional_jump(),
        ],
        "drift" => vec![evosim_core::verify::suite_drift_bounds()],
        other => {
            return Err(CliError::Usage(format!(
                "--suite: unknown suite `{other}` (expected all | selection | mutation | drift)"
            )));
        }
    };

    let mut any_failed = false;
    for outcome in &outcomes {
        if outcome.passed() {
            println!(
                "suite {:<18} PASS  ({} checks)",
                outcome.name, outcome.checks
            );
        } else {
            any_failed = true;
            println!(
                "suite {:<18} FAIL  ({} of {} checks failed)",
                outcome.name, outcome.failure_count, outcome.checks
            );
            for failure in &outcome.failures {
                println!("  - {failure}");
            }
        }
    }
    Ok(if any_failed {
        ExitCode::from(EXIT_VERIFY)
    } else {
        ExitCode::SUCCESS
    })
}
