//! Reproducible Monte Carlo campaigns.
//!
//! Trial `i` of a batch runs on the private stream `stream_seed(master, i)`;
//! sweep cells add one derivation level, `cell_trial_seed(master, cell, i)`.
//! Results are therefore identical for any worker count and any scheduling,
//! and the same call made twice returns the same records.
//!
//! With the `parallel` feature (default) the drivers fan trials out over
//! rayon; `run_trials_sequential` and `sweep_sequential` are always available
//! and bit-identical.

pub mod budget;
pub mod stats;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{self, Algorithm, AlgorithmConfig, BalanceTrajectoryStats};
use crate::error::{Error, Result};
use crate::fitness::{BitString, Problem};
use crate::mutation::MutationKind;
use crate::rng::{cell_trial_seed, stream_seed};
use crate::selection::SelectionParams;

pub use budget::BudgetRule;
pub use stats::{summarize, RuntimeStats, SummaryStats};

/// One Monte Carlo run's outcome, reproducible from
/// `(config, master_seed, trial_id)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: u64,
    /// Derived stream seed the run consumed.
    pub seed: u64,
    /// 64-bit hash of the canonical config serialization.
    pub config_fingerprint: u64,
    pub generations: u64,
    pub success: bool,
    pub final_fitness: f64,
    pub trajectory_stats: Option<BalanceTrajectoryStats>,
}

/// FNV-1a over the canonical JSON of the config.
pub fn config_fingerprint(config: &AlgorithmConfig) -> u64 {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for byte in canonical.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

fn one_trial(
    config: &AlgorithmConfig,
    fingerprint: u64,
    budget: u64,
    seed: u64,
    trial_id: u64,
    initial: Option<&BitString>,
) -> TrialRecord {
    let result = dynamics::run(config, budget, seed, initial);
    TrialRecord {
        trial_id,
        seed,
        config_fingerprint: fingerprint,
        generations: result.generations,
        success: result.success,
        final_fitness: result.final_fitness,
        trajectory_stats: result.trajectory_stats,
    }
}

/// Run `trials` independent seeded runs of one configuration.
pub fn run_trials(
    config: &AlgorithmConfig,
    trials: u64,
    budget: u64,
    master_seed: u64,
    initial: Option<&BitString>,
) -> Vec<TrialRecord> {
    #[cfg(feature = "parallel")]
    {
        let fingerprint = config_fingerprint(config);
        (0..trials)
            .into_par_iter()
            .map(|t| {
                one_trial(
                    config,
                    fingerprint,
                    budget,
                    stream_seed(master_seed, t),
                    t,
                    initial,
                )
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_trials_sequential(config, trials, budget, master_seed, initial)
    }
}

/// Single-threaded equivalent of [`run_trials`].
pub fn run_trials_sequential(
    config: &AlgorithmConfig,
    trials: u64,
    budget: u64,
    master_seed: u64,
    initial: Option<&BitString>,
) -> Vec<TrialRecord> {
    let fingerprint = config_fingerprint(config);
    (0..trials)
        .map(|t| {
            one_trial(
                config,
                fingerprint,
                budget,
                stream_seed(master_seed, t),
                t,
                initial,
            )
        })
        .collect()
}

/// Grid definition of a sweep. The cell list is the Cartesian product of the
/// grids in the field order below; singleton defaults keep unused axes out of
/// the product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub fitness: FitnessKind,
    pub n: Vec<usize>,
    /// Valley widths; only meaningful for cliff.
    #[serde(default)]
    pub d: Vec<usize>,
    #[serde(default)]
    pub algo: Vec<AlgorithmKind>,
    #[serde(default)]
    pub mutation: Vec<MutationKind>,
    /// Selection strengths; ignored by EA cells.
    #[serde(default)]
    pub beta: Vec<f64>,
    /// Grid over Nβ (`"auto"` resolves to ½ln(11n)) or over N directly.
    #[serde(default)]
    pub selection: SelectionGrid,
    pub trials: u64,
    pub budget: BudgetRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitnessKind {
    OneMax,
    Cliff,
    Balance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmKind {
    Sswm,
    Ea,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionGrid {
    /// Values of the product Nβ; `Auto` means ½ln(11n) at the cell's n.
    Nbeta(Vec<NbetaValue>),
    /// Values of the population size N.
    Npop(Vec<f64>),
}

impl Default for SelectionGrid {
    fn default() -> Self {
        SelectionGrid::Nbeta(vec![NbetaValue::Auto])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NbetaValue {
    Auto,
    Value(f64),
}

impl Serialize for NbetaValue {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NbetaValue::Auto => serializer.serialize_str("auto"),
            NbetaValue::Value(v) => serializer.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for NbetaValue {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = NbetaValue;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a number or the string \"auto\"")
            }

            fn visit_str<E: serde::de::Error>(self, s: &str) -> std::result::Result<NbetaValue, E> {
                if s.eq_ignore_ascii_case("auto") {
                    Ok(NbetaValue::Auto)
                } else {
                    s.parse::<f64>()
                        .map(NbetaValue::Value)
                        .map_err(|_| E::custom(format!("bad nbeta `{s}`")))
                }
            }

            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<NbetaValue, E> {
                Ok(NbetaValue::Value(v))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<NbetaValue, E> {
                Ok(NbetaValue::Value(v as f64))
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<NbetaValue, E> {
                Ok(NbetaValue::Value(v as f64))
            }
        }
        de.deserialize_any(V)
    }
}

/// ½ln(11n): the canonical safe setting for Nβ at problem size n.
pub fn auto_nbeta(n: usize) -> f64 {
    0.5 * (11.0 * n as f64).ln()
}

/// Fully resolved coordinates of one sweep cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellConfig {
    pub cell_index: u64,
    pub fitness: FitnessKind,
    pub n: usize,
    pub d: Option<usize>,
    pub algo: AlgorithmKind,
    pub mutation: MutationKind,
    pub beta: Option<f64>,
    pub npop: Option<f64>,
    pub budget: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellResult {
    pub cell: CellConfig,
    pub stats: SummaryStats,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedCell {
    pub cell_index: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub cells: Vec<CellResult>,
    pub skipped: Vec<SkippedCell>,
}

impl SweepSpec {
    fn axes(&self) -> Result<SweepAxes> {
        let single = |label: &'static str, v: &[f64]| -> Result<Vec<f64>> {
            if v.is_empty() {
                Err(Error::invalid("grid", format!("empty `{label}` dimension")))
            } else {
                Ok(v.to_vec())
            }
        };
        if self.n.is_empty() {
            return Err(Error::invalid("grid", "empty `n` dimension"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be ≥ 1"));
        }
        let d: Vec<Option<usize>> = match self.fitness {
            FitnessKind::Cliff => {
                if self.d.is_empty() {
                    return Err(Error::invalid("grid", "cliff sweep needs a `d` grid"));
                }
                self.d.iter().map(|&d| Some(d)).collect()
            }
            _ => vec![None],
        };
        let algo = if self.algo.is_empty() {
            vec![AlgorithmKind::Sswm]
        } else {
            self.algo.clone()
        };
        let mutation = if self.mutation.is_empty() {
            vec![MutationKind::Global]
        } else {
            self.mutation.clone()
        };
        let needs_selection = algo.contains(&AlgorithmKind::Sswm);
        let beta = if self.beta.is_empty() {
            if needs_selection {
                return Err(Error::invalid("grid", "SSWM sweep needs a `beta` grid"));
            }
            vec![f64::NAN]
        } else {
            single("beta", &self.beta)?
        };
        let selection: Vec<SelectionPoint> = match &self.selection {
            SelectionGrid::Nbeta(values) => {
                if values.is_empty() {
                    return Err(Error::invalid("grid", "empty `nbeta` dimension"));
                }
                values.iter().map(|&v| SelectionPoint::Nbeta(v)).collect()
            }
            SelectionGrid::Npop(values) => {
                if values.is_empty() {
                    return Err(Error::invalid("grid", "empty `npop` dimension"));
                }
                values.iter().map(|&v| SelectionPoint::Npop(v)).collect()
            }
        };
        Ok(SweepAxes {
            n: self.n.clone(),
            d,
            algo,
            mutation,
            beta,
            selection,
        })
    }
}

#[derive(Clone, Copy)]
enum SelectionPoint {
    Nbeta(NbetaValue),
    Npop(f64),
}

struct SweepAxes {
    n: Vec<usize>,
    d: Vec<Option<usize>>,
    algo: Vec<AlgorithmKind>,
    mutation: Vec<MutationKind>,
    beta: Vec<f64>,
    selection: Vec<SelectionPoint>,
}

struct PlannedCell {
    index: u64,
    config: AlgorithmConfig,
    echo: CellConfig,
    budget: u64,
}

fn plan_cells(spec: &SweepSpec) -> Result<(Vec<PlannedCell>, Vec<SkippedCell>)> {
    let axes = spec.axes()?;
    let mut planned = Vec::new();
    let mut skipped = Vec::new();
    let mut index = 0u64;
    for &n in &axes.n {
        for &d in &axes.d {
            for &algo in &axes.algo {
                for &mutation in &axes.mutation {
                    for &beta in &axes.beta {
                        for &sel in &axes.selection {
                            let cell_index = index;
                            index += 1;
                            match plan_one(spec, n, d, algo, mutation, beta, sel, cell_index) {
                                Ok(cell) => planned.push(cell),
                                Err(e) => skipped.push(SkippedCell {
                                    cell_index,
                                    reason: e.to_string(),
                                }),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok((planned, skipped))
}

#[allow(clippy::too_many_arguments)]
fn plan_one(
    spec: &SweepSpec,
    n: usize,
    d: Option<usize>,
    algo: AlgorithmKind,
    mutation: MutationKind,
    beta: f64,
    sel: SelectionPoint,
    cell_index: u64,
) -> Result<PlannedCell> {
    let problem = match spec.fitness {
        FitnessKind::OneMax => Problem::onemax(n)?,
        FitnessKind::Cliff => Problem::cliff(n, d.expect("cliff grid carries d"))?,
        FitnessKind::Balance => Problem::balance(n)?,
    };
    let algorithm = match algo {
        AlgorithmKind::Ea => Algorithm::Ea,
        AlgorithmKind::Sswm => {
            let params = match sel {
                SelectionPoint::Nbeta(NbetaValue::Auto) => {
                    SelectionParams::from_nbeta(auto_nbeta(n), beta)?
                }
                SelectionPoint::Nbeta(NbetaValue::Value(v)) => {
                    SelectionParams::from_nbeta(v, beta)?
                }
                SelectionPoint::Npop(npop) => SelectionParams::new(npop, beta)?,
            };
            Algorithm::Sswm(params)
        }
    };
    let budget = spec.budget.evaluate(n)?;
    let (echo_beta, echo_npop) = match &algorithm {
        Algorithm::Ea => (None, None),
        Algorithm::Sswm(p) => (Some(p.beta()), Some(p.population())),
    };
    Ok(PlannedCell {
        index: cell_index,
        config: AlgorithmConfig {
            algorithm,
            mutation,
            problem,
        },
        echo: CellConfig {
            cell_index,
            fitness: spec.fitness,
            n,
            d,
            algo,
            mutation,
            beta: echo_beta,
            npop: echo_npop,
            budget,
        },
        budget,
    })
}

fn run_cell(cell: &PlannedCell, trials: u64, master_seed: u64) -> CellResult {
    let fingerprint = config_fingerprint(&cell.config);
    let records: Vec<TrialRecord> = (0..trials)
        .map(|t| {
            one_trial(
                &cell.config,
                fingerprint,
                cell.budget,
                cell_trial_seed(master_seed, cell.index, t),
                t,
                None,
            )
        })
        .collect();
    let stats = summarize(&records).expect("trials ≥ 1 by construction");
    CellResult {
        cell: cell.echo.clone(),
        stats,
        records,
    }
}

/// Run the full Cartesian product of the sweep grids. Cells that fail
/// validation are reported in `skipped` and do not abort the sweep.
pub fn sweep(spec: &SweepSpec, master_seed: u64) -> Result<SweepReport> {
    let (planned, skipped) = plan_cells(spec)?;
    #[cfg(feature = "parallel")]
    let cells: Vec<CellResult> = {
        // Parallelise over (cell, trial) pairs so small grids still scale.
        let mut flat: Vec<(usize, u64)> = Vec::new();
        for (slot, _) in planned.iter().enumerate() {
            for t in 0..spec.trials {
                flat.push((slot, t));
            }
        }
        let mut per_cell: Vec<Vec<TrialRecord>> = planned.iter().map(|_| Vec::new()).collect();
        let results: Vec<(usize, TrialRecord)> = flat
            .into_par_iter()
            .map(|(slot, t)| {
                let cell = &planned[slot];
                let fingerprint = config_fingerprint(&cell.config);
                let record = one_trial(
                    &cell.config,
                    fingerprint,
                    cell.budget,
                    cell_trial_seed(master_seed, cell.index, t),
                    t,
                    None,
                );
                (slot, record)
            })
            .collect();
        for (slot, record) in results {
            per_cell[slot].push(record);
        }
        planned
            .iter()
            .zip(per_cell)
            .map(|(cell, mut records)| {
                // Deterministic aggregation order regardless of scheduling.
                records.sort_by_key(|r| r.trial_id);
                let stats = summarize(&records).expect("trials ≥ 1 by construction");
                CellResult {
                    cell: cell.echo.clone(),
                    stats,
                    records,
                }
            })
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let cells: Vec<CellResult> = planned
        .iter()
        .map(|cell| run_cell(cell, spec.trials, master_seed))
        .collect();
    Ok(SweepReport { cells, skipped })
}

/// Single-threaded equivalent of [`sweep`].
pub fn sweep_sequential(spec: &SweepSpec, master_seed: u64) -> Result<SweepReport> {
    let (planned, skipped) = plan_cells(spec)?;
    let cells = planned
        .iter()
        .map(|cell| run_cell(cell, spec.trials, master_seed))
        .collect();
    Ok(SweepReport { cells, skipped })
}

/// Growth model for [`scaling_fit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalingModel {
    /// g(n) = n
    N,
    /// g(n) = n·ln n
    NLnN,
    /// g(n) = n^e
    Pow(f64),
}

impl ScalingModel {
    fn g(&self, n: f64) -> f64 {
        match self {
            ScalingModel::N => n,
            ScalingModel::NLnN => n * n.ln(),
            ScalingModel::Pow(e) => n.powf(*e),
        }
    }
}

/// Least-squares slope and r² of `log(statistic)` against `log(g(n))`.
pub fn scaling_fit(points: &[(usize, f64)], model: ScalingModel) -> Result<(f64, f64)> {
    if points.len() < 3 {
        return Err(Error::invalid("points", "need at least 3 points"));
    }
    if points.iter().any(|&(n, y)| n == 0 || y <= 0.0) {
        return Err(Error::invalid("points", "need positive sizes and values"));
    }
    let xs: Vec<f64> = points
        .iter()
        .map(|&(n, _)| model.g(n as f64).ln())
        .collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y.ln()).collect();
    let m = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    if sxx == 0.0 {
        return Err(Error::invalid("points", "all sizes map to the same g(n)"));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let r2 = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok((slope, r2))
}

#[derive(Debug, Clone, Serialize)]
pub struct PhasePoint {
    pub nbeta: f64,
    pub success_rate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseScan {
    pub points: Vec<PhasePoint>,
    /// Smallest grid Nβ whose success rate reaches ½.
    pub threshold_estimate: Option<f64>,
    /// Grid values below 1 that were skipped (outside the regime the scan
    /// targets); pass `force_sub_one` to run them anyway.
    pub rejected: Vec<f64>,
}

/// Success rate of SSWM within a budget across a grid of Nβ values.
pub fn phase_transition_scan(
    n: usize,
    beta: f64,
    nbeta_grid: &[f64],
    budget: u64,
    trials: u64,
    master_seed: u64,
    force_sub_one: bool,
) -> Result<PhaseScan> {
    if nbeta_grid.is_empty() {
        return Err(Error::invalid("nbeta_grid", "must not be empty"));
    }
    let problem = Problem::onemax(n)?;
    let mut points = Vec::new();
    let mut rejected = Vec::new();
    for (idx, &nbeta) in nbeta_grid.iter().enumerate() {
        if nbeta < 1.0 && !force_sub_one {
            rejected.push(nbeta);
            continue;
        }
        let config = AlgorithmConfig {
            algorithm: Algorithm::Sswm(SelectionParams::from_nbeta(nbeta, beta)?),
            mutation: MutationKind::Global,
            problem: problem.clone(),
        };
        let cell_seed = stream_seed(master_seed, idx as u64);
        let records = run_trials(&config, trials, budget, cell_seed, None);
        let successes = records.iter().filter(|r| r.success).count();
        points.push(PhasePoint {
            nbeta,
            success_rate: successes as f64 / trials as f64,
        });
    }
    let threshold_estimate = points
        .iter()
        .filter(|p| p.success_rate >= 0.5)
        .map(|p| p.nbeta)
        .fold(f64::INFINITY, f64::min);
    Ok(PhaseScan {
        points,
        threshold_estimate: threshold_estimate.is_finite().then_some(threshold_estimate),
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ea_onemax(n: usize) -> AlgorithmConfig {
        AlgorithmConfig {
            algorithm: Algorithm::Ea,
            mutation: MutationKind::Global,
            problem: Problem::onemax(n).unwrap(),
        }
    }

    #[test]
    fn forced_optimal_initial_point() {
        let config = ea_onemax(4);
        let initial = BitString::ones(4);
        let records = run_trials(&config, 5, 1000, 3, Some(&initial));
        assert_eq!(records.len(), 5);
        for r in &records {
            assert!(r.success);
            assert_eq!(r.generations, 0);
        }
    }

    #[test]
    fn identical_calls_identical_records() {
        let config = ea_onemax(12);
        let a = run_trials(&config, 50, 10_000, 11, None);
        let b = run_trials(&config, 50, 10_000, 11, None);
        assert_eq!(a, b);
        let seq = run_trials_sequential(&config, 50, 10_000, 11, None);
        assert_eq!(a, seq);
    }

    #[test]
    fn records_order_is_by_trial_id() {
        let config = ea_onemax(8);
        let records = run_trials(&config, 32, 10_000, 5, None);
        for (i, r) in records.iter().enumerate() {
            assert_eq!(r.trial_id, i as u64);
            assert_eq!(r.seed, stream_seed(5, i as u64));
        }
    }

    #[test]
    fn sweep_product_size() {
        let spec = SweepSpec {
            fitness: FitnessKind::OneMax,
            n: vec![8, 16],
            d: vec![],
            algo: vec![AlgorithmKind::Sswm],
            mutation: vec![MutationKind::Global],
            beta: vec![0.5, 1.0, 2.0],
            selection: SelectionGrid::default(),
            trials: 2,
            budget: BudgetRule::parse("100*n").unwrap(),
        };
        let report = sweep(&spec, 1).unwrap();
        assert_eq!(report.cells.len(), 6);
        assert!(report.skipped.is_empty());
    }

    #[test]
    fn sweep_empty_dimension_is_an_error() {
        let spec = SweepSpec {
            fitness: FitnessKind::OneMax,
            n: vec![],
            d: vec![],
            algo: vec![],
            mutation: vec![],
            beta: vec![1.0],
            selection: SelectionGrid::default(),
            trials: 1,
            budget: BudgetRule::parse("10").unwrap(),
        };
        assert!(sweep(&spec, 0).is_err());
    }

    #[test]
    fn sweep_reports_invalid_cells_and_continues() {
        // d=9 violates 2 ≤ d ≤ n/2 at n=10 but is fine at n=20.
        let spec = SweepSpec {
            fitness: FitnessKind::Cliff,
            n: vec![10, 20],
            d: vec![3, 9],
            algo: vec![AlgorithmKind::Ea],
            mutation: vec![MutationKind::Global],
            beta: vec![],
            selection: SelectionGrid::default(),
            trials: 1,
            budget: BudgetRule::parse("50").unwrap(),
        };
        let report = sweep(&spec, 2).unwrap();
        assert_eq!(report.cells.len(), 3);
        assert_eq!(report.skipped.len(), 1);
    }

    #[test]
    fn sweep_matches_sequential() {
        let spec = SweepSpec {
            fitness: FitnessKind::OneMax,
            n: vec![6, 10],
            d: vec![],
            algo: vec![AlgorithmKind::Sswm, AlgorithmKind::Ea],
            mutation: vec![MutationKind::Local, MutationKind::Global],
            beta: vec![1.0],
            selection: SelectionGrid::default(),
            trials: 8,
            budget: BudgetRule::parse("200*n").unwrap(),
        };
        let par = sweep(&spec, 9).unwrap();
        let seq = sweep_sequential(&spec, 9).unwrap();
        assert_eq!(par.cells.len(), seq.cells.len());
        for (a, b) in par.cells.iter().zip(&seq.cells) {
            assert_eq!(a.records, b.records);
            assert_eq!(a.stats, b.stats);
        }
    }

    #[test]
    fn scaling_fit_recovers_exact_laws() {
        let square: Vec<(usize, f64)> = (1..=6).map(|n| (n, (n * n) as f64)).collect();
        let (slope, r2) = scaling_fit(&square, ScalingModel::N).unwrap();
        assert!((slope - 2.0).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);

        let nlogn: Vec<(usize, f64)> = [8usize, 16, 32, 64]
            .iter()
            .map(|&n| (n, 7.0 * n as f64 * (n as f64).ln()))
            .collect();
        let (slope, _) = scaling_fit(&nlogn, ScalingModel::NLnN).unwrap();
        assert!((slope - 1.0).abs() < 1e-12);

        let constant: Vec<(usize, f64)> = (2..=5).map(|n| (n, 3.0)).collect();
        let (slope, r2) = scaling_fit(&constant, ScalingModel::Pow(2.5)).unwrap();
        assert!(slope.abs() < 1e-12);
        assert_eq!(r2, 1.0);
    }

    #[test]
    fn scaling_fit_input_validation() {
        assert!(scaling_fit(&[(1, 1.0), (2, 2.0)], ScalingModel::N).is_err());
        assert!(scaling_fit(&[(1, 1.0), (2, 0.0), (3, 2.0)], ScalingModel::N).is_err());
    }

    #[test]
    fn phase_scan_trivial_size() {
        let scan = phase_transition_scan(2, 1.0, &[1.0, 2.0, 4.0], 10_000, 20, 1, false).unwrap();
        assert_eq!(scan.points.len(), 3);
        for p in &scan.points {
            assert_eq!(p.success_rate, 1.0);
        }
        assert_eq!(scan.threshold_estimate, Some(1.0));
    }

    #[test]
    fn phase_scan_rejects_sub_one_unless_forced() {
        // β = 0.25 keeps N = Nβ/β ≥ 1 even at the sub-one grid point.
        let scan = phase_transition_scan(4, 0.25, &[0.5, 2.0], 1_000, 5, 1, false).unwrap();
        assert_eq!(scan.rejected, vec![0.5]);
        assert_eq!(scan.points.len(), 1);
        let forced = phase_transition_scan(4, 0.25, &[0.5, 2.0], 1_000, 5, 1, true).unwrap();
        assert!(forced.rejected.is_empty());
        assert_eq!(forced.points.len(), 2);
    }

    #[test]
    fn fingerprint_distinguishes_configs() {
        let a = config_fingerprint(&ea_onemax(8));
        let b = config_fingerprint(&ea_onemax(9));
        assert_ne!(a, b);
        assert_eq!(a, config_fingerprint(&ea_onemax(8)));
    }
}
