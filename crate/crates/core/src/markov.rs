//! Exact analysis on the ones-count lattice.
//!
//! For a fitness function that depends on the genotype only through its
//! ones-count, the process is a Markov chain on states `0..=n`. Entry
//! `P[i][j] = mut(i→j) · accept(f(j) − f(i))` for `j ≠ i`, the self-loop
//! absorbs the rest (parent copies and rejections are not distinguished),
//! and optimal states are made absorbing. On top of the chain this module
//! solves expected hitting times, extracts drift profiles, and checks the
//! drift-bound and negative-drift conditions numerically.

use serde::Serialize;

use crate::dynamics::{Algorithm, AlgorithmConfig};
use crate::error::{Error, Result};
use crate::mutation::{jump_row, MutationKind};
use crate::selection::p_fix;

/// Row-stochastic transition matrix of the ones-count process, with the
/// optimal levels turned into absorbing states.
#[derive(Debug, Clone)]
pub struct OnesLatticeChain {
    n: usize,
    p: Vec<f64>,
    absorbing: Vec<bool>,
    level_fitness: Vec<f64>,
    mutation: MutationKind,
    algorithm: Algorithm,
}

impl OnesLatticeChain {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn states(&self) -> usize {
        self.n + 1
    }

    #[inline]
    pub fn prob(&self, i: usize, j: usize) -> f64 {
        self.p[i * (self.n + 1) + j]
    }

    pub fn is_absorbing(&self, i: usize) -> bool {
        self.absorbing[i]
    }

    pub fn level_fitness(&self, i: usize) -> f64 {
        self.level_fitness[i]
    }

    pub fn mutation(&self) -> MutationKind {
        self.mutation
    }

    pub fn algorithm(&self) -> &Algorithm {
        &self.algorithm
    }
}

/// Assemble the exact chain for a level-reducible problem.
pub fn build_chain(config: &AlgorithmConfig) -> Result<OnesLatticeChain> {
    let problem = &config.problem;
    if !problem.is_level_reducible() {
        return Err(Error::NotLevelReducible(problem.name().to_string()));
    }
    let n = problem.n();
    let states = n + 1;
    let level_fitness: Vec<f64> = (0..states)
        .map(|i| problem.level_fitness(i).expect("level-reducible"))
        .collect();
    let optimal: Vec<usize> = problem.optimal_levels().expect("level-reducible");

    let mut p = vec![0.0; states * states];
    let mut absorbing = vec![false; states];
    for &s in &optimal {
        absorbing[s] = true;
    }

    for i in 0..states {
        let row = &mut p[i * states..(i + 1) * states];
        if absorbing[i] {
            row[i] = 1.0;
            continue;
        }
        let jumps = jump_row(n, i, config.mutation);
        let mut off_diagonal = 0.0;
        for (j, &m) in jumps.iter().enumerate() {
            if j == i {
                continue;
            }
            let delta = level_fitness[j] - level_fitness[i];
            let acc = match &config.algorithm {
                Algorithm::Ea => {
                    if delta >= 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                }
                Algorithm::Sswm(params) => p_fix(delta, params),
            };
            row[j] = m * acc;
            off_diagonal += row[j];
        }
        row[i] = 1.0 - off_diagonal;
    }

    Ok(OnesLatticeChain {
        n,
        p,
        absorbing,
        level_fitness,
        mutation: config.mutation,
        algorithm: config.algorithm.clone(),
    })
}

/// Expected generations to absorption from every start state.
///
/// Solves `(I − Q) t = 1` over the transient states by Gaussian elimination
/// with partial pivoting; absorbing states get `t = 0`. Errors when some
/// state cannot reach the absorbing set or the residual exceeds
/// `1e-8 · ‖t‖∞`.
pub fn expected_hitting_times(chain: &OnesLatticeChain) -> Result<Vec<f64>> {
    let states = chain.states();
    let transient: Vec<usize> = (0..states).filter(|&i| !chain.is_absorbing(i)).collect();
    check_reachability(chain, &transient)?;

    let m = transient.len();
    let mut a = vec![0.0f64; m * m];
    for (r, &i) in transient.iter().enumerate() {
        for (c, &j) in transient.iter().enumerate() {
            let q = chain.prob(i, j);
            a[r * m + c] = if r == c { 1.0 - q } else { -q };
        }
    }
    let b = vec![1.0f64; m];
    let t = solve_dense(a.clone(), b, m)?;

    // Residual of the solved system, in the max norm.
    let mut residual = 0.0f64;
    let mut scale = 0.0f64;
    for r in 0..m {
        let mut acc = 0.0;
        for c in 0..m {
            acc += a[r * m + c] * t[c];
        }
        residual = residual.max((acc - 1.0).abs());
    }
    for &v in &t {
        scale = scale.max(v.abs());
    }
    if residual > 1e-8 * scale.max(1.0) {
        return Err(Error::Numerical(format!(
            "hitting-time residual {residual:.3e} exceeds 1e-8·‖t‖∞ = {:.3e}",
            1e-8 * scale
        )));
    }

    let mut times = vec![0.0; states];
    for (r, &i) in transient.iter().enumerate() {
        times[i] = t[r];
    }
    Ok(times)
}

fn check_reachability(chain: &OnesLatticeChain, transient: &[usize]) -> Result<()> {
    // Walk backwards from the absorbing set along positive-probability edges.
    let states = chain.states();
    let mut reaches = vec![false; states];
    let mut stack: Vec<usize> = (0..states).filter(|&i| chain.is_absorbing(i)).collect();
    for &s in &stack {
        reaches[s] = true;
    }
    while let Some(target) = stack.pop() {
        for (i, reached) in reaches.iter_mut().enumerate() {
            if !*reached && chain.prob(i, target) > 0.0 {
                *reached = true;
                stack.push(i);
            }
        }
    }
    for &i in transient {
        if !reaches[i] {
            return Err(Error::UnreachableOptimum { state: i });
        }
    }
    Ok(())
}

/// Gaussian elimination with partial pivoting on a dense row-major system.
fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>, m: usize) -> Result<Vec<f64>> {
    for col in 0..m {
        let mut pivot = col;
        let mut best = a[col * m + col].abs();
        for row in col + 1..m {
            let v = a[row * m + col].abs();
            if v > best {
                best = v;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Err(Error::Numerical(format!("singular system at column {col}")));
        }
        if pivot != col {
            for k in 0..m {
                a.swap(col * m + k, pivot * m + k);
            }
            b.swap(col, pivot);
        }
        let diag = a[col * m + col];
        for row in col + 1..m {
            let factor = a[row * m + col] / diag;
            if factor == 0.0 {
                continue;
            }
            a[row * m + col] = 0.0;
            for k in col + 1..m {
                a[row * m + k] -= factor * a[col * m + k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let mut acc = b[row];
        for k in row + 1..m {
            acc -= a[row * m + k] * x[k];
        }
        x[row] = acc / a[row * m + row];
    }
    Ok(x)
}

/// Expected optimisation time under a uniform random initial point: the
/// hitting times weighted by Binomial(n, ½) over start levels.
pub fn uniform_start_expected_time(chain: &OnesLatticeChain, times: &[f64]) -> f64 {
    let n = chain.n();
    // ln C(n, i) via the cumulative-log trick; n stays small enough here that
    // plain accumulation is exact to working precision.
    let mut ln_fact = vec![0.0f64; n + 1];
    for k in 1..=n {
        ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
    }
    let ln2 = std::f64::consts::LN_2;
    (0..=n)
        .map(|i| {
            let w = (ln_fact[n] - ln_fact[i] - ln_fact[n - i] - n as f64 * ln2).exp();
            w * times[i]
        })
        .sum()
}

/// Forward/backward drift decomposition per state.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DriftEntry {
    pub delta_plus: f64,
    pub delta_minus: f64,
    pub delta: f64,
    pub self_loop: f64,
}

#[derive(Debug, Clone)]
pub struct DriftProfile {
    pub entries: Vec<DriftEntry>,
}

/// Δ⁺(i) = Σ_{j>i} (j−i)·P[i][j], Δ⁻(i) = Σ_{j<i} (j−i)·P[i][j].
pub fn drift_profile(chain: &OnesLatticeChain) -> DriftProfile {
    let states = chain.states();
    let entries = (0..states)
        .map(|i| {
            let mut plus = 0.0;
            let mut minus = 0.0;
            for j in 0..states {
                let step = j as f64 - i as f64;
                let p = chain.prob(i, j);
                if step > 0.0 {
                    plus += step * p;
                } else if step < 0.0 {
                    minus += step * p;
                }
            }
            DriftEntry {
                delta_plus: plus,
                delta_minus: minus,
                delta: plus + minus,
                self_loop: chain.prob(i, i),
            }
        })
        .collect();
    DriftProfile { entries }
}

/// Per-state outcome of the drift-bound inequalities.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DriftBoundCheck {
    pub state: usize,
    /// Slack of the forward bound: `Δ⁺ − bound` (local mutations must match
    /// the closed form, so their margin is `−|Δ⁺ − bound|`).
    pub forward_margin: f64,
    /// Slack of the backward bound: `bound − |Δ⁻|`.
    pub backward_margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DriftBoundsReport {
    /// The inequalities apply to the SSWM chain on the plain ones-counting
    /// landscape only; otherwise the report is marked skipped.
    pub applicable: bool,
    pub skip_reason: Option<String>,
    pub states: Vec<DriftBoundCheck>,
    pub all_pass: bool,
    /// Empirical constant `c` with `Δ(i) ≥ c·β(n−i)/n` over non-optimal
    /// states, reported when `Nβ ≥ ½ln(11n)` holds.
    pub drift_constant: Option<f64>,
    pub nbeta_threshold_met: bool,
}

const BOUND_TOLERANCE: f64 = 1e-9;

/// Check the closed-form drift bounds state by state.
///
/// Local mutations: `Δ⁺(i) = (n−i)/n · p_fix(1)` exactly and
/// `|Δ⁻(i)| ≤ p_fix(−1)`. Global mutations:
/// `Δ⁺(i) ≥ (n−i)/n (1−1/n)^{n−1} p_fix(1)` and
/// `|Δ⁻(i)| ≤ 1.14 (1−1/n)^{n−1} (p_fix(−1) + e·p_fix(−2))`.
pub fn check_drift_bounds(chain: &OnesLatticeChain) -> DriftBoundsReport {
    let n = chain.n();
    let params = match chain.algorithm() {
        Algorithm::Sswm(p) => *p,
        Algorithm::Ea => {
            return DriftBoundsReport {
                applicable: false,
                skip_reason: Some("drift bounds are stated for SSWM only".into()),
                states: Vec::new(),
                all_pass: true,
                drift_constant: None,
                nbeta_threshold_met: false,
            };
        }
    };
    if chain
        .level_fitness
        .iter()
        .enumerate()
        .any(|(i, &f)| f != i as f64)
    {
        return DriftBoundsReport {
            applicable: false,
            skip_reason: Some("drift bounds are stated for the ones-counting landscape".into()),
            states: Vec::new(),
            all_pass: true,
            drift_constant: None,
            nbeta_threshold_met: false,
        };
    }

    let profile = drift_profile(chain);
    let up = p_fix(1.0, &params);
    let down1 = p_fix(-1.0, &params);
    let down2 = p_fix(-2.0, &params);
    let stay = (1.0 - 1.0 / n as f64).powi(n as i32 - 1);

    let mut states = Vec::with_capacity(n + 1);
    let mut all_pass = true;
    for (i, entry) in profile.entries.iter().enumerate() {
        let frac = (n - i) as f64 / n as f64;
        let (forward_margin, backward_margin) = match chain.mutation() {
            MutationKind::Local => {
                let exact = frac * up;
                (
                    -(entry.delta_plus - exact).abs(),
                    down1 - entry.delta_minus.abs(),
                )
            }
            MutationKind::Global => {
                let lower = frac * stay * up;
                let upper = 1.14 * stay * (down1 + std::f64::consts::E * down2);
                (entry.delta_plus - lower, upper - entry.delta_minus.abs())
            }
        };
        let pass = forward_margin >= -BOUND_TOLERANCE && backward_margin >= -BOUND_TOLERANCE;
        all_pass &= pass;
        states.push(DriftBoundCheck {
            state: i,
            forward_margin,
            backward_margin,
            pass,
        });
    }

    let nbeta_threshold_met = params.nbeta() >= 0.5 * (11.0 * n as f64).ln();
    let drift_constant = if nbeta_threshold_met {
        profile
            .entries
            .iter()
            .enumerate()
            .take(n) // exclude the absorbing optimum (0/0)
            .map(|(i, e)| e.delta * n as f64 / (params.beta() * (n - i) as f64))
            .fold(f64::INFINITY, f64::min)
            .into()
    } else {
        None
    };

    DriftBoundsReport {
        applicable: true,
        skip_reason: None,
        states,
        all_pass,
        drift_constant,
        nbeta_threshold_met,
    }
}

/// Which coordinate plays the distance-to-target role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DistanceMeasure {
    /// Distance = number of zeros (target: the all-ones optimum).
    Zeros,
    /// Distance = number of ones (target: the all-zeros state).
    Ones,
}

#[derive(Debug, Clone, Copy)]
pub struct NegativeDriftParams {
    /// Interval `a < distance ≤ b` — hypotheses are checked on `[a, b]`.
    pub a: usize,
    pub b: usize,
    pub epsilon: f64,
    pub r: f64,
    pub delta: f64,
    pub distance: DistanceMeasure,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NegativeDriftStateCheck {
    /// Distance coordinate of the state.
    pub distance: usize,
    /// `−drift-toward-target − ε(1−p_kk)`; the hypothesis needs this > 0.
    pub drift_margin: f64,
    /// Smallest slack of `r(1−p_kk)/(1+δ)^d − p_{k,k±d}` over all jumps.
    pub jump_margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NegativeDriftReport {
    pub drift_condition_holds: bool,
    pub jump_condition_holds: bool,
    /// Both hypotheses hold on the interval.
    pub holds: bool,
    pub states: Vec<NegativeDriftStateCheck>,
}

/// Numerically test the standard negative-drift conditions for chains with
/// self-loops: drift away from the target of at least `ε(1−p_kk)` on the
/// interval, and jump probabilities bounded by `r(1−p_kk)/(1+δ)^d`.
///
/// The check reports hypothesis satisfaction only; it never derives a
/// concrete time bound.
pub fn check_negative_drift(
    chain: &OnesLatticeChain,
    params: &NegativeDriftParams,
) -> Result<NegativeDriftReport> {
    if params.epsilon <= 0.0 {
        return Err(Error::invalid("epsilon", "must be > 0"));
    }
    if params.r <= 0.0 || params.delta <= 0.0 {
        return Err(Error::invalid("r/delta", "must be > 0"));
    }
    let n = chain.n();
    if !(params.a < params.b && params.b <= n && params.a > 0) {
        return Err(Error::invalid(
            "interval",
            format!("need 0 < a < b ≤ n, got a={}, b={}", params.a, params.b),
        ));
    }

    let state_of = |distance: usize| match params.distance {
        DistanceMeasure::Zeros => n - distance,
        DistanceMeasure::Ones => distance,
    };
    // Ones-count drift translated into distance drift.
    let drift_sign = match params.distance {
        DistanceMeasure::Zeros => -1.0,
        DistanceMeasure::Ones => 1.0,
    };

    let profile = drift_profile(chain);
    let mut states = Vec::new();
    let mut drift_ok = true;
    for k in params.a..=params.b {
        let i = state_of(k);
        let entry = profile.entries[i];
        let outward = drift_sign * entry.delta; // expected distance change
        let drift_margin = outward - params.epsilon * (1.0 - entry.self_loop);
        drift_ok &= drift_margin > 0.0;
        states.push(NegativeDriftStateCheck {
            distance: k,
            drift_margin,
            jump_margin: f64::INFINITY,
        });
    }

    // Jump condition ranges over every state with distance ≥ 1.
    let mut jump_ok = true;
    for k in 1..=n {
        let i = state_of(k);
        if chain.is_absorbing(i) {
            continue;
        }
        let self_loop = chain.prob(i, i);
        let budget = params.r * (1.0 - self_loop);
        let mut worst = f64::INFINITY;
        for j in 0..chain.states() {
            if j == i {
                continue;
            }
            let d = i.abs_diff(j) as u32;
            let cap = budget / (1.0 + params.delta).powi(d as i32);
            worst = worst.min(cap - chain.prob(i, j));
        }
        jump_ok &= worst >= 0.0;
        if let Some(entry) = states.iter_mut().find(|s| s.distance == k) {
            entry.jump_margin = worst;
        }
    }

    Ok(NegativeDriftReport {
        drift_condition_holds: drift_ok,
        jump_condition_holds: jump_ok,
        holds: drift_ok && jump_ok,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitness::Problem;
    use crate::selection::SelectionParams;

    fn config(problem: Problem, algorithm: Algorithm, mutation: MutationKind) -> AlgorithmConfig {
        AlgorithmConfig {
            algorithm,
            mutation,
            problem,
        }
    }

    fn sswm(n: f64, beta: f64) -> Algorithm {
        Algorithm::Sswm(SelectionParams::new(n, beta).unwrap())
    }

    #[test]
    fn elitist_rejection_on_two_bits() {
        let chain = build_chain(&config(
            Problem::onemax(2).unwrap(),
            Algorithm::Ea,
            MutationKind::Local,
        ))
        .unwrap();
        assert_eq!(chain.prob(1, 2), 0.5);
        assert_eq!(chain.prob(1, 0), 0.0);
        assert_eq!(chain.prob(1, 1), 0.5);
    }

    #[test]
    fn population_one_accepts_all() {
        let chain = build_chain(&config(
            Problem::onemax(2).unwrap(),
            sswm(1.0, 1.0),
            MutationKind::Local,
        ))
        .unwrap();
        assert_eq!(chain.prob(1, 0), 0.5);
    }

    #[test]
    fn cliff_downhill_move_uses_definition_delta() {
        // n=10, d=3: f(7) = 7, f(8) = 5.5, so the move 7→8 is accepted with
        // p_fix(−1.5).
        let params = SelectionParams::new(4.0, 1.0).unwrap();
        let chain = build_chain(&config(
            Problem::cliff(10, 3).unwrap(),
            Algorithm::Sswm(params),
            MutationKind::Global,
        ))
        .unwrap();
        let mutation = crate::mutation::mut_exact(10, 7, 8, MutationKind::Global).unwrap();
        let expected = mutation * p_fix(-1.5, &params);
        assert!((chain.prob(7, 8) - expected).abs() < 1e-15);
    }

    #[test]
    fn rows_sum_to_one() {
        let chain = build_chain(&config(
            Problem::cliff(20, 4).unwrap(),
            sswm(3.0, 0.7),
            MutationKind::Global,
        ))
        .unwrap();
        for i in 0..chain.states() {
            let sum: f64 = (0..chain.states()).map(|j| chain.prob(i, j)).sum();
            assert!((sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn balance_is_not_level_reducible() {
        let err = build_chain(&config(
            Problem::balance(8).unwrap(),
            Algorithm::Ea,
            MutationKind::Global,
        ))
        .unwrap_err();
        assert!(matches!(err, Error::NotLevelReducible(_)));
    }

    #[test]
    fn coupon_collector_time() {
        let chain = build_chain(&config(
            Problem::onemax(3).unwrap(),
            Algorithm::Ea,
            MutationKind::Local,
        ))
        .unwrap();
        let t = expected_hitting_times(&chain).unwrap();
        assert!((t[0] - 5.5).abs() < 1e-10);
        assert_eq!(t[3], 0.0);
    }

    #[test]
    fn ea_local_cannot_cross_the_valley() {
        let err = expected_hitting_times(
            &build_chain(&config(
                Problem::cliff(10, 3).unwrap(),
                Algorithm::Ea,
                MutationKind::Local,
            ))
            .unwrap(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnreachableOptimum { .. }));
    }

    #[test]
    fn hitting_times_decrease_toward_optimum() {
        let chain = build_chain(&config(
            Problem::onemax(32).unwrap(),
            Algorithm::Ea,
            MutationKind::Global,
        ))
        .unwrap();
        let t = expected_hitting_times(&chain).unwrap();
        for i in 0..32 {
            assert!(t[i] >= t[i + 1]);
        }
    }

    #[test]
    fn drift_profile_matches_local_closed_form() {
        let params = SelectionParams::new(5.0, 0.8).unwrap();
        let n = 40;
        let chain = build_chain(&config(
            Problem::onemax(n).unwrap(),
            Algorithm::Sswm(params),
            MutationKind::Local,
        ))
        .unwrap();
        let profile = drift_profile(&chain);
        let up = p_fix(1.0, &params);
        let down = p_fix(-1.0, &params);
        for i in 0..n {
            let e = profile.entries[i];
            let expected = (n - i) as f64 / n as f64 * up;
            assert!((e.delta_plus - expected).abs() < 1e-14);
            assert!(e.delta_minus.abs() <= down + 1e-14);
            assert!((e.delta - (e.delta_plus + e.delta_minus)).abs() < 1e-15);
        }
    }

    #[test]
    fn ea_has_no_backward_drift() {
        let chain = build_chain(&config(
            Problem::onemax(16).unwrap(),
            Algorithm::Ea,
            MutationKind::Global,
        ))
        .unwrap();
        for e in drift_profile(&chain).entries {
            assert_eq!(e.delta_minus, 0.0);
        }
    }

    #[test]
    fn drift_bounds_pass_at_safe_nbeta() {
        let n = 50;
        let nbeta = 0.5 * (11.0 * n as f64).ln();
        for (kind, beta) in [(MutationKind::Local, 1.0), (MutationKind::Global, 1e-3)] {
            let params = SelectionParams::from_nbeta(nbeta, beta).unwrap();
            let chain = build_chain(&config(
                Problem::onemax(n).unwrap(),
                Algorithm::Sswm(params),
                kind,
            ))
            .unwrap();
            let report = check_drift_bounds(&chain);
            assert!(report.applicable);
            assert!(report.all_pass, "{kind:?} β={beta}");
            assert!(report.nbeta_threshold_met);
            let c = report.drift_constant.unwrap();
            assert!(c > 0.0);
        }
    }

    #[test]
    fn drift_bounds_skip_ea() {
        let chain = build_chain(&config(
            Problem::onemax(50).unwrap(),
            Algorithm::Ea,
            MutationKind::Global,
        ))
        .unwrap();
        let report = check_drift_bounds(&chain);
        assert!(!report.applicable);
        assert!(report.skip_reason.is_some());
    }

    #[test]
    fn negative_drift_holds_in_the_weak_selection_regime() {
        let n = 100;
        let chain = build_chain(&config(
            Problem::onemax(n).unwrap(),
            sswm(0.25 * (n as f64).ln(), 1.0),
            MutationKind::Global,
        ))
        .unwrap();
        let report = check_negative_drift(
            &chain,
            &NegativeDriftParams {
                a: 1,
                b: 4,
                epsilon: 1.0,
                r: 2.0,
                delta: 1.0,
                distance: DistanceMeasure::Zeros,
            },
        )
        .unwrap();
        assert!(report.drift_condition_holds);
        assert!(report.jump_condition_holds);
        assert!(report.holds);
    }

    #[test]
    fn negative_drift_fails_in_the_strong_selection_regime() {
        let n = 100;
        let chain = build_chain(&config(
            Problem::onemax(n).unwrap(),
            sswm(0.5 * (11.0 * n as f64).ln(), 1.0),
            MutationKind::Global,
        ))
        .unwrap();
        let report = check_negative_drift(
            &chain,
            &NegativeDriftParams {
                a: 1,
                b: 4,
                epsilon: 1.0,
                r: 2.0,
                delta: 1.0,
                distance: DistanceMeasure::Zeros,
            },
        )
        .unwrap();
        assert!(!report.drift_condition_holds);
        assert!(!report.holds);
    }

    #[test]
    fn negative_drift_parameter_validation() {
        let chain = build_chain(&config(
            Problem::onemax(10).unwrap(),
            sswm(2.0, 1.0),
            MutationKind::Global,
        ))
        .unwrap();
        let bad = NegativeDriftParams {
            a: 1,
            b: 4,
            epsilon: 0.0,
            r: 2.0,
            delta: 1.0,
            distance: DistanceMeasure::Zeros,
        };
        assert!(check_negative_drift(&chain, &bad).is_err());
        let bad_interval = NegativeDriftParams { a: 4, b: 4, ..bad };
        let mut fixed = bad_interval;
        fixed.epsilon = 1.0;
        assert!(check_negative_drift(&chain, &fixed).is_err());
    }

    #[test]
    fn uniform_start_weights_sum() {
        let chain = build_chain(&config(
            Problem::onemax(12).unwrap(),
            Algorithm::Ea,
            MutationKind::Global,
        ))
        .unwrap();
        let ones = vec![1.0; chain.states()];
        assert!((uniform_start_expected_time(&chain, &ones) - 1.0).abs() < 1e-12);
    }
}
