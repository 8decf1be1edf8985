//! Config-file schema and flag/file resolution.
//!
//! Config files are JSON with the same keys as the flags; flags win on
//! conflict. The fully resolved spec is echoed as one JSON line on stderr and
//! can be fed back through `--config` to reproduce a run.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use evosim_core::dynamics::{Algorithm, AlgorithmConfig};
use evosim_core::experiments::{auto_nbeta, BudgetRule};
use evosim_core::fitness::{BitString, Problem};
use evosim_core::mutation::MutationKind;
use evosim_core::selection::SelectionParams;

use crate::CliError;

/// Partial run configuration: every field optional so a file and the flags
/// can overlay.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// Nβ; the string `"auto"` resolves to ½ln(11n).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nbeta: Option<String>,
    /// Population size N; conflicts with `nbeta`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub npop: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_beta: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Forced initial point as a 0/1 string.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

impl RunSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Overlay `flags` on top of `self` (flags win).
    pub fn overlaid(mut self, flags: RunSpec) -> Self {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if flags.$field.is_some() { self.$field = flags.$field; })*
            };
        }
        take!(
            algo,
            fitness,
            n,
            d,
            mutation,
            beta,
            nbeta,
            npop,
            strict_beta,
            trials,
            budget,
            seed,
            initial,
            workers
        );
        self
    }
}

/// Fully resolved run parameters plus their core bindings.
pub struct ResolvedRun {
    pub echo: RunSpec,
    pub config: AlgorithmConfig,
    pub budget: u64,
    pub trials: u64,
    pub seed: u64,
    pub initial: Option<BitString>,
    pub workers: Option<usize>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_mutation(name: &str) -> Result<MutationKind, CliError> {
    match name {
        "local" => Ok(MutationKind::Local),
        "global" => Ok(MutationKind::Global),
        other => Err(usage(format!(
            "--mutation: unknown operator `{other}` (expected local | global)"
        ))),
    }
}

pub fn parse_problem(spec: &RunSpec) -> Result<Problem, CliError> {
    let fitness = spec
        .fitness
        .as_deref()
        .ok_or_else(|| usage("--fitness is required"))?;
    let n = spec.n.ok_or_else(|| usage("--n is required"))?;
    match fitness {
        "onemax" => Ok(Problem::onemax(n)?),
        "cliff" => {
            let d = spec
                .d
                .ok_or_else(|| usage("--d is required for --fitness cliff"))?;
            Ok(Problem::cliff(n, d)?)
        }
        "balance" => {
            if spec.d.is_some() {
                return Err(usage("--d only applies to --fitness cliff"));
            }
            Problem::balance(n).map_err(|_| usage(format!("--n: balance needs even n, got {n}")))
        }
        other => Err(usage(format!(
            "--fitness: unknown function `{other}` (expected onemax | cliff | balance)"
        ))),
    }
}

pub fn parse_algorithm(spec: &RunSpec, n: usize) -> Result<Algorithm, CliError> {
    let algo = spec
        .algo
        .as_deref()
        .ok_or_else(|| usage("--algo is required"))?;
    match algo {
        "ea" => Ok(Algorithm::Ea),
        "sswm" => {
            let beta = spec
                .beta
                .ok_or_else(|| usage("--beta is required for --algo sswm"))?;
            let strict = spec.strict_beta.unwrap_or(false);
            let params = match (&spec.nbeta, spec.npop) {
                (Some(_), Some(_)) => {
                    return Err(usage("--nbeta and --npop are mutually exclusive"));
                }
                (Some(nbeta), None) => {
                    let value = if nbeta.eq_ignore_ascii_case("auto") {
                        auto_nbeta(n)
                    } else {
                        nbeta.parse::<f64>().map_err(|_| {
                            usage(format!(
                                "--nbeta: expected a number or `auto`, got `{nbeta}`"
                            ))
                        })?
                    };
                    SelectionParams::from_nbeta(value, beta)?
                }
                (None, Some(npop)) => SelectionParams::new(npop, beta)?,
                (None, None) => {
                    return Err(usage("--algo sswm needs --nbeta (or --npop)"));
                }
            };
            if strict && params.beta_exceeds_unit() {
                return Err(usage(format!(
                    "--beta {beta} rejected: outside (0, 1] under --strict-beta"
                )));
            }
            if params.beta_exceeds_unit() {
                eprintln!("warning: --beta {beta} exceeds the canonical (0, 1] range");
            }
            Ok(Algorithm::Sswm(params))
        }
        other => Err(usage(format!(
            "--algo: unknown algorithm `{other}` (expected sswm | ea)"
        ))),
    }
}

/// Master-seed default when neither flag nor file provide one.
pub fn env_seed() -> Option<u64> {
    std::env::var("EVOSIM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
}

pub fn resolve_run(spec: RunSpec) -> Result<ResolvedRun, CliError> {
    let problem = parse_problem(&spec)?;
    let n = problem.n();
    let algorithm = parse_algorithm(&spec, n)?;
    let mutation = parse_mutation(
        spec.mutation
            .as_deref()
            .ok_or_else(|| usage("--mutation is required"))?,
    )?;
    let budget_text = spec
        .budget
        .as_deref()
        .ok_or_else(|| usage("--budget is required"))?;
    let budget = BudgetRule::parse(budget_text)
        .and_then(|rule| rule.evaluate(n))
        .map_err(|e| usage(format!("--budget: {e}")))?;
    let trials = spec.trials.unwrap_or(1);
    if trials == 0 {
        return Err(usage("--trials must be ≥ 1"));
    }
    let seed = spec.seed.or_else(env_seed).unwrap_or(0);
    let initial = spec
        .initial
        .as_deref()
        .map(|bits| -> Result<BitString, CliError> {
            let x: BitString = bits.parse().map_err(|e| usage(format!("--initial: {e}")))?;
            if x.len() != n {
                return Err(usage(format!(
                    "--initial: length {} does not match --n {n}",
                    x.len()
                )));
            }
            Ok(x)
        })
        .transpose()?;

    let config = AlgorithmConfig {
        algorithm: algorithm.clone(),
        mutation,
        problem: problem.clone(),
    };
    // Echo with selection resolved to a concrete population size.
    let echo = RunSpec {
        algo: Some(algorithm.name().to_string()),
        fitness: Some(problem.name().to_string()),
        n: Some(n),
        d: match problem {
            Problem::Cliff { d, .. } => Some(d),
            _ => None,
        },
        mutation: Some(mutation.name().to_string()),
        beta: algorithm.selection().map(|p| p.beta()),
        nbeta: None,
        npop: algorithm.selection().map(|p| p.population()),
        strict_beta: spec.strict_beta,
        trials: Some(trials),
        budget: Some(budget_text.to_string()),
        seed: Some(seed),
        initial: spec.initial.clone(),
        workers: spec.workers,
    };

    Ok(ResolvedRun {
        echo,
        config,
        budget,
        trials,
        seed,
        initial,
        workers: spec.workers,
    })
}

/// Sweep config file: the core grid spec plus a master seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepFileSpec {
    #[serde(flatten)]
    pub grid: evosim_core::experiments::SweepSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}
