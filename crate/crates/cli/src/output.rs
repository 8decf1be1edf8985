//! CSV and JSON emitters. Tables are RFC-4180 (via the csv crate), UTF-8,
//! LF line endings; summaries are single-line JSON objects.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use evosim_core::dynamics::{Algorithm, AlgorithmConfig};
use evosim_core::experiments::TrialRecord;
use evosim_core::markov::{DriftProfile, OnesLatticeChain};

use crate::CliError;

/// `--out` destination: file when given, stdout otherwise.
pub fn table_writer(out: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    })
}

pub const TRIAL_COLUMNS: [&str; 14] = [
    "trial_id",
    "algo",
    "fitness",
    "n",
    "d",
    "beta",
    "N",
    "mutation",
    "seed",
    "generations",
    "success",
    "final_fitness",
    "lo_decrease_events",
    "hit_trap",
];

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Per-trial CSV rows. Columns that do not apply to the configuration
/// (d, beta, N, balance instrumentation) stay empty.
pub fn write_trials_csv(
    w: impl Write,
    config: &AlgorithmConfig,
    records: &[TrialRecord],
) -> Result<(), CliError> {
    let mut csv = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    csv.write_record(TRIAL_COLUMNS)?;
    let d = match config.problem {
        evosim_core::fitness::Problem::Cliff { d, .. } => Some(d),
        _ => None,
    };
    let (beta, npop) = match &config.algorithm {
        Algorithm::Sswm(p) => (Some(p.beta()), Some(p.population())),
        Algorithm::Ea => (None, None),
    };
    for r in records {
        let stats = r.trajectory_stats.as_ref();
        csv.write_record([
            r.trial_id.to_string(),
            config.algorithm.name().to_string(),
            config.problem.name().to_string(),
            config.problem.n().to_string(),
            d.map(|d| d.to_string()).unwrap_or_default(),
            beta.map(fmt_f64).unwrap_or_default(),
            npop.map(fmt_f64).unwrap_or_default(),
            config.mutation.name().to_string(),
            r.seed.to_string(),
            r.generations.to_string(),
            r.success.to_string(),
            fmt_f64(r.final_fitness),
            stats
                .map(|s| s.lo_decrease_events.to_string())
                .unwrap_or_default(),
            stats.map(|s| s.hit_trap.to_string()).unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub const CHAIN_COLUMNS: [&str; 6] = [
    "state",
    "delta_plus",
    "delta_minus",
    "delta",
    "self_loop",
    "hitting_time",
];

/// Per-state lattice table. `times` may be absent when the solve failed but
/// the drift columns are still wanted.
pub fn write_chain_csv(
    w: impl Write,
    chain: &OnesLatticeChain,
    profile: &DriftProfile,
    times: Option<&[f64]>,
) -> Result<(), CliError> {
    let mut csv = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    csv.write_record(CHAIN_COLUMNS)?;
    for state in 0..chain.states() {
        let e = &profile.entries[state];
        csv.write_record([
            state.to_string(),
            fmt_f64(e.delta_plus),
            fmt_f64(e.delta_minus),
            fmt_f64(e.delta),
            fmt_f64(e.self_loop),
            times.map(|t| fmt_f64(t[state])).unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

/// One JSON line on stderr: the fully resolved configuration.
pub fn echo_config<T: serde::Serialize>(config: &T) -> Result<(), CliError> {
    let line = serde_json::to_string(config).map_err(|e| CliError::Runtime(e.to_string()))?;
    eprintln!("{line}");
    Ok(())
}

/// Summary JSON: to the given file, or one line on stderr.
pub fn emit_json<T: serde::Serialize>(value: &T, target: Option<&PathBuf>) -> Result<(), CliError> {
    match target {
        Some(path) => {
            let mut f = File::create(path)?;
            serde_json::to_writer_pretty(&mut f, value)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            f.write_all(b"\n")?;
        }
        None => {
            let line =
                serde_json::to_string(value).map_err(|e| CliError::Runtime(e.to_string()))?;
            eprintln!("{line}");
        }
    }
    Ok(())
}
