//! Mutation operators and exact jump-probability kernels on the ones-count.
//!
//! Local mutation flips a single uniformly chosen position. Global mutation
//! flips every bit independently with probability `1/n`; the offspring may
//! equal the parent, and such a step still counts against the budget.
//!
//! `mut_exact` gives the exact probability that one mutation maps ones-count
//! `i` to `j`, evaluated through log-factorials with compensated summation so
//! the binomial terms neither overflow nor lose relative accuracy for large
//! `n`. `mut_upper_bound` is the closed-form `1.14/k!` envelope on jumps of
//! size `k ≥ 1`.

use rand::distr::Distribution;
use rand::Rng;
use rand_distr::Binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitness::BitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MutationKind {
    Local,
    Global,
}

impl MutationKind {
    pub fn name(&self) -> &'static str {
        match self {
            MutationKind::Local => "local",
            MutationKind::Global => "global",
        }
    }
}

/// Reusable sampler for one mutation kind at a fixed length.
///
/// Global mutation draws a Bernoulli(1/n) per bit when the genome fits in one
/// 64-bit word, and a Binomial(n, 1/n) flip count plus a uniform position
/// subset above that. The two schemes sample the same distribution; the
/// threshold only trades per-bit draws against subset sampling.
#[derive(Debug, Clone)]
pub struct Mutator {
    kind: MutationKind,
    n: usize,
    flip_prob: f64,
    binomial: Option<Binomial>,
}

const PER_BIT_MAX_LEN: usize = 64;

impl Mutator {
    pub fn new(kind: MutationKind, n: usize) -> Self {
        assert!(n > 0);
        let binomial = match kind {
            MutationKind::Global if n > PER_BIT_MAX_LEN => {
                Some(Binomial::new(n as u64, 1.0 / n as f64).expect("valid binomial"))
            }
            _ => None,
        };
        Mutator {
            kind,
            n,
            flip_prob: 1.0 / n as f64,
            binomial,
        }
    }

    pub fn mutate_in_place(&self, x: &mut BitString, rng: &mut impl Rng) {
        debug_assert_eq!(x.len(), self.n);
        match self.kind {
            MutationKind::Local => {
                x.flip(rng.random_range(0..self.n));
            }
            MutationKind::Global => match &self.binomial {
                None => {
                    for i in 0..self.n {
                        if rng.random_bool(self.flip_prob) {
                            x.flip(i);
                        }
                    }
                }
                Some(binomial) => {
                    let flips = binomial.sample(rng) as usize;
                    if flips > 0 {
                        for i in rand::seq::index::sample(rng, self.n, flips) {
                            x.flip(i);
                        }
                    }
                }
            },
        }
    }
}

/// One mutation of `x`.
pub fn mutate(x: &BitString, kind: MutationKind, rng: &mut impl Rng) -> BitString {
    let mut y = x.clone();
    Mutator::new(kind, x.len()).mutate_in_place(&mut y, rng);
    y
}

/// ln k! for k ≤ n, built once with compensated accumulation.
struct LnFactorials(Vec<f64>);

impl LnFactorials {
    fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(0.0);
        let mut sum = 0.0f64;
        let mut carry = 0.0f64;
        for k in 1..=n {
            // Kahan step keeps the absolute error at a few ulps of the sum.
            let term = (k as f64).ln() - carry;
            let next = sum + term;
            carry = (next - sum) - term;
            sum = next;
            table.push(sum);
        }
        LnFactorials(table)
    }

    #[inline]
    fn ln_choose(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n);
        self.0[n] - self.0[k] - self.0[n - k]
    }

    #[inline]
    fn ln_fact(&self, k: usize) -> f64 {
        self.0[k]
    }
}

/// Exact probability that one mutation maps ones-count `i` to `j` on length
/// `n`. Local: `(n−i)/n` up one, `i/n` down one, zero otherwise. Global: the
/// sum over `l ≥ 0` of flipping `l` one-bits together with `k+l` zero-bits
/// (`k = j − i ≥ 0`; downward jumps use `mut(i, i−k) = mut(n−i, n−i+k)`).
pub fn mut_exact(n: usize, i: usize, j: usize, kind: MutationKind) -> Result<f64> {
    if i > n || j > n {
        return Err(Error::invalid(
            "ones-count",
            format!("need 0 ≤ i,j ≤ n; got i={i}, j={j}, n={n}"),
        ));
    }
    match kind {
        MutationKind::Local => Ok(local_jump(n, i, j)),
        MutationKind::Global => {
            let table = LnFactorials::up_to(n);
            Ok(global_jump(n, i, j, &table))
        }
    }
}

/// `x * ln_y` where `x = 0` must dominate even against `ln_y = −∞` (n = 1).
#[inline]
fn xlny(x: f64, ln_y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * ln_y
    }
}

#[inline]
fn local_jump(n: usize, i: usize, j: usize) -> f64 {
    if j == i + 1 {
        (n - i) as f64 / n as f64
    } else if j + 1 == i {
        i as f64 / n as f64
    } else {
        0.0
    }
}

fn global_jump(n: usize, i: usize, j: usize, table: &LnFactorials) -> f64 {
    // Upward form; mirror downward jumps through the ones/zeros symmetry.
    let (i, j) = if j >= i { (i, j) } else { (n - i, n - j) };
    let k = j - i;
    let ln_p = -(n as f64).ln();
    let ln_q = (-(1.0 / n as f64)).ln_1p();
    let l_max = usize::min(i, n - i - k);

    // Factor out the largest log-term, then sum exp-ratios with Kahan
    // compensation; every term is positive so there is no cancellation.
    let mut logs = Vec::with_capacity(l_max + 1);
    let mut peak = f64::NEG_INFINITY;
    for l in 0..=l_max {
        let lt = table.ln_choose(i, l)
            + table.ln_choose(n - i, k + l)
            + (k + 2 * l) as f64 * ln_p
            + xlny((n - k - 2 * l) as f64, ln_q);
        peak = peak.max(lt);
        logs.push(lt);
    }
    if peak == f64::NEG_INFINITY {
        return 0.0;
    }
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for lt in logs {
        let term = (lt - peak).exp() - carry;
        let next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    peak.exp() * sum
}

/// Whole transition row of the ones-count under one mutation: entry `j` is
/// `mut_exact(n, i, j, kind)`.
pub fn jump_row(n: usize, i: usize, kind: MutationKind) -> Vec<f64> {
    match kind {
        MutationKind::Local => (0..=n).map(|j| local_jump(n, i, j)).collect(),
        MutationKind::Global => {
            let table = LnFactorials::up_to(n);
            (0..=n).map(|j| global_jump(n, i, j, &table)).collect()
        }
    }
}

/// Closed-form upper bound on a global-mutation jump of `|jump| = k ≥ 1`:
/// `((n−i)/n)^k (1−1/n)^{n−k} · 1.14/k!` upward, the `i/n` mirror downward.
pub fn mut_upper_bound(n: usize, i: usize, jump: i64) -> Result<f64> {
    if jump == 0 {
        return Err(Error::invalid("jump", "bound is only defined for k ≥ 1"));
    }
    if i > n {
        return Err(Error::invalid("ones-count", format!("i={i} > n={n}")));
    }
    let k = jump.unsigned_abs() as usize;
    if k > n {
        return Ok(0.0);
    }
    let base = if jump > 0 {
        (n - i) as f64 / n as f64
    } else {
        i as f64 / n as f64
    };
    if base == 0.0 {
        return Ok(0.0);
    }
    let table = LnFactorials::up_to(usize::max(n, k));
    let ln = xlny(k as f64, base.ln())
        + xlny((n - k) as f64, (-(1.0 / n as f64)).ln_1p())
        + 1.14f64.ln()
        - table.ln_fact(k);
    Ok(ln.exp())
}
