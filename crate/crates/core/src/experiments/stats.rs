//! Summary statistics over trial batches.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Xoshiro256PlusPlus;

use super::TrialRecord;

const BOOTSTRAP_RESAMPLES: usize = 10_000;
const MIN_SUCCESSES_FOR_CI: usize = 10;
// Fixed so that summarize is a pure function of its records.
const BOOTSTRAP_SEED: u64 = 0x5eed_b007;

/// Statistics of the generation counts of successful runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeStats {
    pub mean: f64,
    pub median: f64,
    pub q10: f64,
    pub q90: f64,
    /// Percentile-bootstrap 95% interval of the mean; absent below
    /// 10 successes.
    pub ci95_mean: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// `None` flags that no run succeeded, leaving runtimes undefined.
    pub runtime: Option<RuntimeStats>,
}

/// Aggregate a batch of records. Runtime statistics are computed over the
/// successful runs only; the success rate over all of them.
pub fn summarize(records: &[TrialRecord]) -> Result<SummaryStats> {
    if records.is_empty() {
        return Err(Error::EmptyInput("summarize needs at least one record"));
    }
    let mut generations: Vec<f64> = records
        .iter()
        .filter(|r| r.success)
        .map(|r| r.generations as f64)
        .collect();
    let successes = generations.len();
    let trials = records.len();
    let success_rate = successes as f64 / trials as f64;

    if successes == 0 {
        return Ok(SummaryStats {
            trials,
            successes,
            success_rate,
            runtime: None,
        });
    }

    generations.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mean = generations.iter().sum::<f64>() / successes as f64;
    let runtime = RuntimeStats {
        mean,
        median: quantile_sorted(&generations, 0.5),
        q10: quantile_sorted(&generations, 0.1),
        q90: quantile_sorted(&generations, 0.9),
        ci95_mean: (successes >= MIN_SUCCESSES_FOR_CI).then(|| bootstrap_mean_ci(&generations)),
    };
    Ok(SummaryStats {
        trials,
        successes,
        success_rate,
        runtime: Some(runtime),
    })
}

/// Linear-interpolation quantile of an ascending slice.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let w = pos - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

fn bootstrap_mean_ci(values: &[f64]) -> (f64, f64) {
    let mut rng = Xoshiro256PlusPlus::new(BOOTSTRAP_SEED);
    let n = values.len();
    let mut means = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        let mut sum = 0.0;
        for _ in 0..n {
            sum += values[(rng.next_u64() % n as u64) as usize];
        }
        means.push(sum / n as f64);
    }
    means.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (
        quantile_sorted(&means, 0.025),
        quantile_sorted(&means, 0.975),
    )
}

/// Exact Binomial(n, p) CDF, P(X ≤ k).
pub fn binomial_cdf(k: u64, n: u64, p: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p));
    if k >= n {
        return 1.0;
    }
    // Iterate the pmf multiplicatively; n stays small in test use.
    let q = 1.0 - p;
    let mut pmf = q.powi(n as i32);
    let mut cdf = pmf;
    for x in 0..k {
        pmf *= (n - x) as f64 / (x + 1) as f64 * (p / q);
        cdf += pmf;
    }
    cdf.min(1.0)
}

/// Largest success count still consistent with rate ≤ `p` at the given
/// confidence: the `confidence` quantile of Binomial(n, p).
pub fn binomial_upper_band(n: u64, p: f64, confidence: f64) -> u64 {
    (0..=n)
        .find(|&k| binomial_cdf(k, n, p) >= confidence)
        .unwrap_or(n)
}

/// Smallest success count still consistent with rate ≥ `p`: the
/// `1 − confidence` quantile of Binomial(n, p).
pub fn binomial_lower_band(n: u64, p: f64, confidence: f64) -> u64 {
    (0..=n)
        .rev()
        .find(|&k| {
            let below = if k == 0 {
                0.0
            } else {
                binomial_cdf(k - 1, n, p)
            };
            below <= 1.0 - confidence
        })
        .unwrap_or(0)
}
