//! Deterministic property suites behind the `verify` CLI verb.
//!
//! Each suite checks one analytic fact exhaustively at small scale and
//! returns the failures it found instead of panicking, so the CLI can turn
//! the outcome into an exit code and a report.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dynamics::{Algorithm, AlgorithmConfig};
use crate::fitness::Problem;
use crate::markov::{build_chain, check_drift_bounds};
use crate::mutation::{jump_row, mut_upper_bound, MutationKind};
use crate::selection::{p_fix, p_fix_bounds, SelectionParams};

const MAX_REPORTED_FAILURES: usize = 20;

/// Below this, acceptance probabilities sit in the subnormal range where
/// consecutive values collapse to equal floats.
const UNDERFLOW_FLOOR: f64 = 1e-290;

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checks: u64,
    /// Human-readable descriptions of failed checks, truncated to the first
    /// few; `failure_count` keeps the true total.
    pub failures: Vec<String>,
    pub failure_count: u64,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            checks: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn merge(&mut self, other: SuiteOutcome) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(f);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Fixation-probability envelope, monotonicity, limits and continuity.
///
/// Grid: β ∈ {1e-4, …, 1} decades, N ∈ {1, 2, 10, 100, 1e4},
/// Δf ∈ [−10, 10] in steps of 0.01.
pub fn suite_selection_bounds() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("selection-bounds");
    let betas = [1e-4, 1e-3, 1e-2, 1e-1, 1.0];
    let pops = [1.0, 2.0, 10.0, 100.0, 1e4];
    for &beta in &betas {
        for &n in &pops {
            let params = SelectionParams::new(n, beta).unwrap();
            let mut prev: Option<f64> = None;
            for step in -1000..=1000i64 {
                let delta = step as f64 * 0.01;
                let p = p_fix(delta, &params);
                let (lower, upper) = p_fix_bounds(delta, &params);
                out.check(p.is_finite() && (0.0..=1.0).contains(&p), || {
                    format!("p_fix({delta}, N={n}, β={beta}) = {p} out of [0,1]")
                });
                // Sandwich with 1e-12 relative slack.
                let slack = 1e-12 * p.abs().max(1.0);
                out.check(lower <= p + slack && p <= upper + slack, || {
                    format!(
                        "envelope violated at Δf={delta}, N={n}, β={beta}: \
                         {lower} ≤ {p} ≤ {upper}"
                    )
                });
                if let Some(prev) = prev {
                    if n > 1.0 {
                        // Strict growth once the value is representable; deep
                        // in the negative tail p_fix drops under the smallest
                        // positive double and only non-strict order survives.
                        let ok = if p >= UNDERFLOW_FLOOR {
                            p > prev
                        } else {
                            prev <= p
                        };
                        out.check(ok, || {
                            format!("p_fix not strictly increasing at Δf={delta}, N={n}, β={beta}")
                        });
                    } else {
                        out.check(p == 1.0, || {
                            format!("p_fix ≠ 1 at Δf={delta} with N=1, β={beta}")
                        });
                    }
                }
                prev = Some(p);
            }
        }
    }
    // Saturation at Δf = ±1e3 and continuity at 0.
    let params = SelectionParams::new(10.0, 1.0).unwrap();
    out.check(p_fix(1e3, &params) > 1.0 - 1e-12, || "upper limit".into());
    out.check(p_fix(-1e3, &params) < 1e-12, || "lower limit".into());
    for n in [2.0, 100.0] {
        let params = SelectionParams::new(n, 1.0).unwrap();
        for delta in [1e-9, -1e-9] {
            out.check((p_fix(delta, &params) - 1.0 / n).abs() < 1e-6, || {
                format!("discontinuity at 0 for N={n}")
            });
        }
    }
    out
}

/// Exact jump kernel against full mask enumeration, n ≤ 12.
///
/// Every one of the 2^n global-mutation masks applied to the canonical point
/// with `i` ones contributes `p^|mask| (1−p)^{n−|mask|}` to the ones-count it
/// produces; the aggregated distribution must match `mut_exact` to 1e-12.
pub fn suite_mutation_oracle() -> SuiteOutcome {
    let mut out = SuiteOutcome::new("mutation-oracle");
    for n in 1..=12usize {
        let p = 1.0 / n as f64;
        // mask_prob[k] = p^k (1−p)^{n−k}
        let mut mask_prob = vec![0.0f64; n + 1];
        for (k, slot) in mask_prob.iter_mut().enumerate() {
            *slot = p.powi(k as i32) * (1.0 - p).powi((n - k) as i32);
        }
        for i in 0..=n {
            let mut enumerated = vec![0.0f64; n + 1];
            for mask in 0u32..(1u32 << n) {
                let flipped_ones = (mask & ((1u32 << i) - 1)).count_ones() as usize;
                let flipped_zeros = mask.count_ones() as usize - flipped_ones;
                let target = i - flipped_ones + flipped_zeros;
                enumerated[target] += mask_prob[mask.count_ones() as usize];
            }
            let row = jump_row(n, i, MutationKind::Global);
            for j in 0..=n {
                out.check((row[j] - enumerated[j]).abs() <= 1e-12, || {
                    format!(
                        "mut_exact({n},{i},{j}) = {} vs enumeration {}",
                        row[j], enumerated[j]
                    )
                });
            }
        }
    }
    out
}

/// Rows of the jump kernel sum to one (1e-10), sizes up to 200.
pub fn suite_row_stochastic() -> SuiteOutcome {
    let sizes = [1usize, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 200];
    let partial: Vec<SuiteOutcome> = maybe_par(&sizes, |&n| {
        let mut out = SuiteOutcome::new("row-stochastic");
        for kind in [MutationKind::Local, MutationKind::Global] {
            for i in 0..=n {
                let sum: f64 = jump_row(n, i, kind).iter().sum();
                out.check((sum - 1.0).abs() <= 1e-10, || {
                    format!("row {i} of n={n} ({kind:?}) sums to {sum}")
                });
            }
        }
        out
    });
    merge_all("row-stochastic", partial)
}

/// The `1.14/k!` jump envelope dominates the exact kernel in both directions
/// for every n ≤ 100, every i, every k ≥ 1.
pub fn suite_jump_bounds() -> SuiteOutcome {
    let sizes: Vec<usize> = (1..=100).collect();
    let partial: Vec<SuiteOutcome> = maybe_par(&sizes, |&n| {
        let mut out = SuiteOutcome::new("jump-bounds");
        for i in 0..=n {
            let row = jump_row(n, i, MutationKind::Global);
            for k in 1..=n {
                if i + k <= n {
                    let bound = mut_upper_bound(n, i, k as i64).unwrap();
                    out.check(row[i + k] <= bound * (1.0 + 1e-12), || {
                        format!("up-jump bound broken at n={n}, i={i}, k={k}")
                    });
                }
                if i >= k {
                    let bound = mut_upper_bound(n, i, -(k as i64)).unwrap();
                    out.check(row[i - k] <= bound * (1.0 + 1e-12), || {
                        format!("down-jump bound broken at n={n}, i={i}, k={k}")
                    });
                }
            }
        }
        out
    });
    merge_all("jump-bounds", partial)
}

/// Jumping exactly `k` up is at least twice as likely as `k+1`, n ≤ 100.
pub fn suite_geometric_decay() -> SuiteOutcome {
    let sizes: Vec<usize> = (2..=100).collect();
    let partial: Vec<SuiteOutcome> = maybe_par(&sizes, |&n| {
        let mut out = SuiteOutcome::new("geometric-decay");
        for i in 0..n {
            let row = jump_row(n, i, MutationKind::Global);
            for k in 1..=(n - i) {
                let next = if i + k < n { row[i + k + 1] } else { 0.0 };
                out.check(row[i + k] >= 2.0 * next * (1.0 - 1e-12), || {
                    format!("decay broken at n={n}, i={i}, k={k}")
                });
            }
        }
        out
    });
    merge_all("geometric-decay", partial)
}

/// Conditional probability of landing exactly at `j`, given the jump reaches
/// `j` or beyond, is at least ½ for all i < j, n ≤ 60.
pub fn suite_conditional_jump() -> SuiteOutcome {
    let sizes: Vec<usize> = (1..=60).collect();
    let partial: Vec<SuiteOutcome> = maybe_par(&sizes, |&n| {
        let mut out = SuiteOutcome::new("conditional-jump");
        for i in 0..n {
            let row = jump_row(n, i, MutationKind::Global);
            // Suffix sums over targets ≥ j.
            let mut tail = 0.0;
            let mut ratios = Vec::with_capacity(n - i);
            for j in (i + 1..=n).rev() {
                tail += row[j];
                ratios.push((j, row[j] / tail));
            }
            for (j, ratio) in ratios {
                out.check(ratio >= 0.5 - 1e-12, || {
                    format!("conditional jump below ½ at n={n}, i={i}, j={j}: {ratio}")
                });
            }
        }
        out
    });
    merge_all("conditional-jump", partial)
}

/// Closed-form drift bounds on the exact SSWM chain, sizes up to 200,
/// local and global mutations, β ∈ {1, 1e-3}, Nβ = ½ln(11n).
pub fn suite_drift_bounds() -> SuiteOutcome {
    let sizes = [5usize, 10, 25, 50, 100, 150, 200];
    let partial: Vec<SuiteOutcome> = maybe_par(&sizes, |&n| {
        let mut out = SuiteOutcome::new("drift-bounds");
        let nbeta = 0.5 * (11.0 * n as f64).ln();
        for kind in [MutationKind::Local, MutationKind::Global] {
            for beta in [1.0, 1e-3] {
                let config = AlgorithmConfig {
                    algorithm: Algorithm::Sswm(SelectionParams::from_nbeta(nbeta, beta).unwrap()),
                    mutation: kind,
                    problem: Problem::onemax(n).unwrap(),
                };
                let report = check_drift_bounds(&build_chain(&config).unwrap());
                for state in &report.states {
                    out.check(state.pass, || {
                        format!(
                            "drift bound failed at n={n}, {kind:?}, β={beta}, state {}: \
                             forward margin {:.3e}, backward margin {:.3e}",
                            state.state, state.forward_margin, state.backward_margin
                        )
                    });
                }
                out.check(
                    report.drift_constant.map(|c| c > 0.0).unwrap_or(false),
                    || format!("no positive drift constant at n={n}, {kind:?}, β={beta}"),
                );
            }
        }
        out
    });
    merge_all("drift-bounds", partial)
}

fn merge_all(name: &'static str, partial: Vec<SuiteOutcome>) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(name);
    for p in partial {
        out.merge(p);
    }
    out
}

#[cfg(feature = "parallel")]
fn maybe_par<T, F>(items: &[T], f: F) -> Vec<SuiteOutcome>
where
    T: Sync,
    F: Fn(&T) -> SuiteOutcome + Send + Sync,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn maybe_par<T, F>(items: &[T], f: F) -> Vec<SuiteOutcome>
where
    T: Sync,
    F: Fn(&T) -> SuiteOutcome + Send + Sync,
{
    items.iter().map(f).collect()
}

/// Every suite, in a stable order.
pub fn all_suites() -> Vec<SuiteOutcome> {
    vec![
        suite_selection_bounds(),
        suite_mutation_oracle(),
        suite_row_stochastic(),
        suite_jump_bounds(),
        suite_geometric_decay(),
        suite_conditional_jump(),
        suite_drift_bounds(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    // The full suites run in the acceptance gate; here just pin the shape of
    // an outcome and one cheap suite end to end.
    #[test]
    fn mutation_oracle_suite_passes() {
        let out = suite_mutation_oracle();
        assert!(out.passed(), "failures: {:?}", out.failures);
        assert_eq!(out.checks, 818);
    }

    #[test]
    fn outcome_collects_failures() {
        let mut out = SuiteOutcome::new("demo");
        out.check(true, || unreachable!());
        out.check(false, || "boom".into());
        assert!(!out.passed());
        assert_eq!(out.checks, 2);
        assert_eq!(out.failures, vec!["boom".to_string()]);
    }
}
