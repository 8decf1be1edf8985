//! The two (1+1)-type processes and the run loop.
//!
//! Both processes keep a single current point, mutate it once per generation
//! and decide acceptance from the fitness difference: the EA keeps any
//! offspring with `Δf ≥ 0`, SSWM keeps an offspring with probability
//! `p_fix(Δf)`. A run stops at the first generation whose *accepted* current
//! point is a global optimum — an optimal offspring that is created but
//! rejected does not stop an SSWM run — or when the generation budget is
//! exhausted.
//!
//! Runs are strictly sequential internally; concurrency happens across runs
//! (see [`crate::experiments`]), each with a private stream derived from the
//! master seed.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::fitness::{balance_parts, BalanceBranch, BitString, Problem};
use crate::mutation::{MutationKind, Mutator};
use crate::rng::Xoshiro256PlusPlus;
use crate::selection::{p_fix, SelectionParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algo", rename_all = "lowercase")]
pub enum Algorithm {
    /// Elitist (1+1) EA: accept iff `Δf ≥ 0`.
    Ea,
    /// Fixation-probability acceptance.
    Sswm(SelectionParams),
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Ea => "ea",
            Algorithm::Sswm(_) => "sswm",
        }
    }

    pub fn selection(&self) -> Option<&SelectionParams> {
        match self {
            Algorithm::Ea => None,
            Algorithm::Sswm(p) => Some(p),
        }
    }
}

/// Everything a run needs: process, operator, landscape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmConfig {
    pub algorithm: Algorithm,
    pub mutation: MutationKind,
    pub problem: Problem,
}

/// One accept/reject decision.
///
/// The SSWM branch consumes exactly one uniform draw even when the decision
/// is forced (`N = 1` accepts everything), which keeps the generator stream
/// aligned with an unfiltered mutation walk under the same seed.
#[inline]
pub fn accept(delta_f: f64, algorithm: &Algorithm, rng: &mut Xoshiro256PlusPlus) -> bool {
    match algorithm {
        Algorithm::Ea => delta_f >= 0.0,
        Algorithm::Sswm(params) => rng.random::<f64>() < p_fix(delta_f, params),
    }
}

/// Per-run trajectory instrumentation for balance runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceTrajectoryStats {
    /// Accepted steps that lost a leading one while `|b|₁` of both parent and
    /// offspring stayed strictly inside the gradient window `(n/16, 7n/16)`.
    pub lo_decrease_events: u64,
    /// Steps whose offspring kept every leading one of the parent intact.
    pub relevant_steps: u64,
    pub max_ones_b: usize,
    pub min_ones_b: usize,
    /// `|b|₁` of the initial point; runs starting outside the window are kept
    /// and can be recognised from this field.
    pub initial_ones_b: usize,
    /// Some accepted point fell into the trap branch (`n²·LO(a)`).
    pub hit_trap: bool,
    /// Some accepted point fell into the zero branch.
    pub hit_zero: bool,
}

impl BalanceTrajectoryStats {
    fn new(initial: &BitString) -> Self {
        let parts = balance_parts(initial);
        BalanceTrajectoryStats {
            lo_decrease_events: 0,
            relevant_steps: 0,
            max_ones_b: parts.ones_b,
            min_ones_b: parts.ones_b,
            initial_ones_b: parts.ones_b,
            hit_trap: parts.branch == BalanceBranch::Trap,
            hit_zero: parts.branch == BalanceBranch::Zero,
        }
    }

    fn in_window(n: usize, ones_b: usize) -> bool {
        16 * ones_b > n && 16 * ones_b < 7 * n
    }
}

/// Outcome of a single run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub success: bool,
    /// Optimisation time when `success`, otherwise the exhausted budget.
    pub generations: u64,
    pub final_fitness: f64,
    pub trajectory_stats: Option<BalanceTrajectoryStats>,
}

/// What happened in one generation, for observers.
#[derive(Debug, Clone, Copy)]
pub struct StepEvent {
    pub generation: u64,
    pub delta_f: f64,
    pub accepted: bool,
    /// Fitness of the current point after the accept/reject decision.
    pub fitness: f64,
}

/// Run with the given generation budget. The initial point is sampled
/// uniformly from the run's own stream unless `initial` forces it; a forced
/// optimal initial point succeeds at generation 0.
pub fn run(
    config: &AlgorithmConfig,
    budget: u64,
    seed: u64,
    initial: Option<&BitString>,
) -> RunResult {
    run_observed(config, budget, seed, initial, |_| {})
}

pub fn run_observed(
    config: &AlgorithmConfig,
    budget: u64,
    seed: u64,
    initial: Option<&BitString>,
    mut observer: impl FnMut(&StepEvent),
) -> RunResult {
    let problem = &config.problem;
    let n = problem.n();
    let mut rng = Xoshiro256PlusPlus::new(seed);

    let mut x = match initial {
        Some(point) => {
            assert_eq!(point.len(), n, "forced initial point has wrong length");
            point.clone()
        }
        None => BitString::random(n, &mut rng),
    };
    let mut fx = problem.evaluate(&x);

    let is_balance = matches!(problem, Problem::Balance { .. });
    let mut stats = is_balance.then(|| BalanceTrajectoryStats::new(&x));
    // Leading-ones count of the current first half, maintained incrementally
    // for balance instrumentation.
    let mut lo_x = if is_balance {
        x.leading_ones_prefix(n / 2)
    } else {
        0
    };
    let mut ones_b_x = stats.as_ref().map(|s| s.initial_ones_b).unwrap_or(0);

    if problem.is_optimum(&x) {
        return RunResult {
            success: true,
            generations: 0,
            final_fitness: fx,
            trajectory_stats: stats,
        };
    }

    let mutator = Mutator::new(config.mutation, n);
    let mut y = x.clone();

    for generation in 1..=budget {
        y.clone_from(&x);
        mutator.mutate_in_place(&mut y, &mut rng);
        let fy = problem.evaluate(&y);
        let delta_f = fy - fx;
        let accepted = accept(delta_f, &config.algorithm, &mut rng);

        if let Some(stats) = stats.as_mut() {
            let parts = balance_parts(&y);
            if parts.leading_ones_a >= lo_x {
                stats.relevant_steps += 1;
            }
            if accepted {
                if parts.leading_ones_a < lo_x
                    && BalanceTrajectoryStats::in_window(n, ones_b_x)
                    && BalanceTrajectoryStats::in_window(n, parts.ones_b)
                {
                    stats.lo_decrease_events += 1;
                }
                stats.max_ones_b = stats.max_ones_b.max(parts.ones_b);
                stats.min_ones_b = stats.min_ones_b.min(parts.ones_b);
                stats.hit_trap |= parts.branch == BalanceBranch::Trap;
                stats.hit_zero |= parts.branch == BalanceBranch::Zero;
                lo_x = parts.leading_ones_a;
                ones_b_x = parts.ones_b;
            }
        }

        if accepted {
            std::mem::swap(&mut x, &mut y);
            fx = fy;
        }

        observer(&StepEvent {
            generation,
            delta_f,
            accepted,
            fitness: fx,
        });

        if accepted && problem.is_optimum(&x) {
            return RunResult {
                success: true,
                generations: generation,
                final_fitness: fx,
                trajectory_stats: stats,
            };
        }
    }

    RunResult {
        success: false,
        generations: budget,
        final_fitness: fx,
        trajectory_stats: stats,
    }
}
