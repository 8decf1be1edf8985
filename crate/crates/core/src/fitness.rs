//! Bit-string genotypes and the three benchmark fitness functions.
//!
//! * `onemax` — number of one-bits; unique optimum at the all-ones string.
//! * `cliff` — OneMax with a drop of `d − ½` just past ones-count `n − d`,
//!   so the optimum can only be reached through a fitness valley.
//! * `balance` — two-part function on `x = ab`: leading ones of `a` carry a
//!   weight of `n`, ones of `b` a weight of 1. Leaving the central window of
//!   `|b|₁` leads into a trap region that rewards only the leading-ones count.
//!
//! All values are exactly representable in an `f64` for supported sizes
//! (integers and half-integers up to `n³`).

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed-length binary genotype, bit `i` stored at word `i / 64`, bit `i % 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "empty bit strings are not allowed");
        BitString {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut x = Self::zeros(len);
        for w in &mut x.words {
            *w = u64::MAX;
        }
        x.mask_tail();
        x
    }

    /// Uniform random string of length `len`.
    pub fn random(len: usize, rng: &mut impl Rng) -> Self {
        let mut x = Self::zeros(len);
        for w in &mut x.words {
            *w = rng.next_u64();
        }
        x.mask_tail();
        x
    }

    fn mask_tail(&mut self) {
        let used = self.len % 64;
        if used != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Ones among bit positions `[from, to)`.
    pub fn count_ones_in(&self, from: usize, to: usize) -> usize {
        debug_assert!(from <= to && to <= self.len);
        let mut total = 0usize;
        let mut i = from;
        while i < to {
            let word = i / 64;
            let lo = i % 64;
            let hi = usize::min(64, lo + (to - i));
            let mut w = self.words[word] >> lo;
            if hi - lo < 64 {
                w &= (1u64 << (hi - lo)) - 1;
            }
            total += w.count_ones() as usize;
            i += hi - lo;
        }
        total
    }

    /// Length of the maximal all-ones prefix of the first `prefix_len` bits.
    pub fn leading_ones_prefix(&self, prefix_len: usize) -> usize {
        debug_assert!(prefix_len <= self.len);
        let mut run = 0usize;
        let mut remaining = prefix_len;
        for w in &self.words {
            if remaining == 0 {
                break;
            }
            let take = usize::min(64, remaining);
            let ones = if take == 64 {
                w.trailing_ones() as usize
            } else {
                usize::min((w.trailing_ones()) as usize, take)
            };
            run += ones;
            if ones < take {
                return run;
            }
            remaining -= take;
        }
        run
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Parses "10110": the first character is bit 0.
    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::invalid("bits", "empty string"));
        }
        let mut x = BitString::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => x.set(i, true),
                '0' => {}
                other => {
                    return Err(Error::invalid("bits", format!("unexpected `{other}`")));
                }
            }
        }
        Ok(x)
    }
}

/// Number of one-bits.
pub fn onemax(x: &BitString) -> f64 {
    x.count_ones() as f64
}

/// Ones-count with a drop of `d − ½` past level `n − d`; optimum `n − d + ½`
/// at the all-ones string.
pub fn cliff(x: &BitString, d: usize) -> f64 {
    let n = x.len();
    let ones = x.count_ones();
    cliff_level(n, d, ones)
}

/// Cliff fitness as a function of the ones-count alone.
pub fn cliff_level(n: usize, d: usize, ones: usize) -> f64 {
    debug_assert!(d >= 2 && 2 * d <= n);
    if ones <= n - d {
        ones as f64
    } else {
        (ones - d) as f64 + 0.5
    }
}

/// Length of the maximal all-ones prefix of the whole string.
pub fn leading_ones(x: &BitString) -> usize {
    x.leading_ones_prefix(x.len())
}

/// Which case of the balance definition a point falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BalanceBranch {
    /// `LO(a) = n/2`: global optimum, value `n³`.
    Optimal,
    /// `n/16 < |b|₁ < 7n/16`: the two-gradient region, value `|b|₁ + n·LO(a)`.
    Window,
    /// `zeros(a) > √n`: the trap, value `n²·LO(a)`.
    Trap,
    /// Everything else, value 0.
    Zero,
}

/// Decomposition of a balance evaluation; lets the run loop reuse the
/// leading-ones and `|b|₁` counts it needs for trajectory instrumentation.
#[derive(Debug, Clone, Copy)]
pub struct BalanceParts {
    pub leading_ones_a: usize,
    pub ones_b: usize,
    pub branch: BalanceBranch,
    pub value: f64,
}

/// Balance fitness on `x = ab`, `|a| = |b| = n/2`. The four cases are tested
/// in definition order; the window thresholds `n/16 < |b|₁ < 7n/16` are strict
/// and so is `zeros(a) > √n` (a perfect-square zero count stays out of the
/// trap branch).
pub fn balance(x: &BitString) -> f64 {
    balance_parts(x).value
}

pub fn balance_parts(x: &BitString) -> BalanceParts {
    let n = x.len();
    debug_assert!(n.is_multiple_of(2), "balance needs even n");
    let half = n / 2;
    let lo = x.leading_ones_prefix(half);
    let ones_b = x.count_ones_in(half, n);
    let nf = n as f64;
    let (branch, value) = if lo == half {
        (BalanceBranch::Optimal, nf * nf * nf)
    } else if 16 * ones_b > n && 16 * ones_b < 7 * n {
        (BalanceBranch::Window, ones_b as f64 + nf * lo as f64)
    } else {
        let zeros_a = half - x.count_ones_in(0, half);
        if zeros_a as f64 > nf.sqrt() {
            (BalanceBranch::Trap, nf * nf * lo as f64)
        } else {
            (BalanceBranch::Zero, 0.0)
        }
    };
    BalanceParts {
        leading_ones_a: lo,
        ones_b,
        branch,
        value,
    }
}

/// A fitness function bound to a problem size, with validated parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fitness", rename_all = "lowercase")]
pub enum Problem {
    OneMax { n: usize },
    Cliff { n: usize, d: usize },
    Balance { n: usize },
}

impl Problem {
    pub fn onemax(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "must be ≥ 1"));
        }
        Ok(Problem::OneMax { n })
    }

    pub fn cliff(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "must be ≥ 1"));
        }
        if d < 2 || 2 * d > n {
            return Err(Error::invalid(
                "d",
                format!("cliff needs 2 ≤ d ≤ n/2, got d={d} with n={n}"),
            ));
        }
        Ok(Problem::Cliff { n, d })
    }

    pub fn balance(n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::invalid(
                "n",
                format!("balance needs even n, got {n}"),
            ));
        }
        Ok(Problem::Balance { n })
    }

    pub fn n(&self) -> usize {
        match *self {
            Problem::OneMax { n } | Problem::Cliff { n, .. } | Problem::Balance { n } => n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Problem::OneMax { .. } => "onemax",
            Problem::Cliff { .. } => "cliff",
            Problem::Balance { .. } => "balance",
        }
    }

    pub fn evaluate(&self, x: &BitString) -> f64 {
        debug_assert_eq!(x.len(), self.n());
        match *self {
            Problem::OneMax { .. } => onemax(x),
            Problem::Cliff { d, .. } => cliff(x, d),
            Problem::Balance { .. } => balance(x),
        }
    }

    /// Fitness of the global optima.
    pub fn optimum_fitness(&self) -> f64 {
        match *self {
            Problem::OneMax { n } => n as f64,
            Problem::Cliff { n, d } => (n - d) as f64 + 0.5,
            Problem::Balance { n } => {
                let nf = n as f64;
                nf * nf * nf
            }
        }
    }

    pub fn is_optimum(&self, x: &BitString) -> bool {
        match *self {
            Problem::OneMax { n } | Problem::Cliff { n, .. } => x.count_ones() == n,
            Problem::Balance { n } => x.leading_ones_prefix(n / 2) == n / 2,
        }
    }

    /// Fitness as a function of the ones-count, when the function depends on
    /// the genotype only through it.
    pub fn level_fitness(&self, ones: usize) -> Option<f64> {
        match *self {
            Problem::OneMax { .. } => Some(ones as f64),
            Problem::Cliff { n, d } => Some(cliff_level(n, d, ones)),
            Problem::Balance { .. } => None,
        }
    }

    pub fn is_level_reducible(&self) -> bool {
        !matches!(self, Problem::Balance { .. })
    }

    /// States of the ones-count lattice that are globally optimal point sets.
    pub fn optimal_levels(&self) -> Option<Vec<usize>> {
        match *self {
            Problem::OneMax { n } | Problem::Cliff { n, .. } => Some(vec![n]),
            Problem::Balance { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn onemax_counts() {
        assert_eq!(onemax(&bs("00000")), 0.0);
        assert_eq!(onemax(&bs("10110")), 3.0);
        assert_eq!(onemax(&BitString::ones(97)), 97.0);
    }

    #[test]
    fn cliff_branches() {
        // n=10, d=3
        let p = Problem::cliff(10, 3).unwrap();
        let at = |ones: usize| {
            let mut x = BitString::zeros(10);
            for i in 0..ones {
                x.set(i, true);
            }
            p.evaluate(&x)
        };
        assert_eq!(at(7), 7.0);
        assert_eq!(at(8), 5.5);
        assert_eq!(at(10), 7.5);
        assert_eq!(p.optimum_fitness(), 7.5);
    }

    #[test]
    fn cliff_valley_below_peak() {
        let n = 20;
        for d in 2..=10usize {
            for j in 1..d {
                assert!(cliff_level(n, d, n - d + j) < (n - d) as f64);
            }
        }
    }

    #[test]
    fn cliff_params_validated() {
        assert!(Problem::cliff(10, 1).is_err());
        assert!(Problem::cliff(10, 6).is_err());
        assert!(Problem::cliff(10, 5).is_ok());
    }

    #[test]
    fn leading_ones_examples() {
        assert_eq!(leading_ones(&bs("1101")), 2);
        assert_eq!(leading_ones(&bs("0111")), 0);
        assert_eq!(leading_ones(&bs("1111")), 4);
        // Runs crossing a word boundary.
        let mut x = BitString::ones(130);
        assert_eq!(leading_ones(&x), 130);
        x.set(70, false);
        assert_eq!(leading_ones(&x), 70);
    }

    #[test]
    fn balance_examples_n16() {
        // Window at n=16 is 1 < |b|₁ < 7, √n = 4.
        let f = |a: &str, b: &str| balance(&bs(&format!("{a}{b}")));
        assert_eq!(f("11111111", "01010101"), 4096.0);
        assert_eq!(f("11010000", "10101010"), 36.0); // LO=2, |b|₁=4
        assert_eq!(f("10000000", "11111110"), 256.0); // LO=1, zeros=7>4, |b|₁=7 out of window
        assert_eq!(f("11111100", "11111111"), 0.0); // zeros=2 ≤ 4, |b|₁=8
    }

    #[test]
    fn balance_branch_order_optimum_wins() {
        // LO(a)=n/2 scores n³ even when |b|₁ sits in the trap zone.
        let x = bs("1111111100000000");
        assert_eq!(balance(&x), 4096.0);
        assert_eq!(balance_parts(&x).branch, BalanceBranch::Optimal);
    }

    #[test]
    fn balance_perfect_square_zero_count_is_not_trap() {
        // n=16: zeros(a) = 4 = √16 must not enter the trap branch.
        let x = bs("1010101000000000");
        let parts = balance_parts(&x);
        assert_eq!(parts.branch, BalanceBranch::Zero);
        assert_eq!(parts.value, 0.0);
    }

    #[test]
    fn balance_odd_length_rejected() {
        assert!(Problem::balance(7).is_err());
        assert!(Problem::balance(8).is_ok());
    }

    #[test]
    fn count_ones_in_ranges() {
        let x = bs("1101100111");
        assert_eq!(x.count_ones_in(0, 5), 4);
        assert_eq!(x.count_ones_in(5, 10), 3);
        assert_eq!(x.count_ones_in(3, 3), 0);
        let y = BitString::ones(200);
        assert_eq!(y.count_ones_in(63, 130), 67);
    }

    #[test]
    fn parse_display_roundtrip() {
        let s = "100110101";
        assert_eq!(bs(s).to_string(), s);
        assert!("10a1".parse::<BitString>().is_err());
    }

    #[test]
    fn random_respects_length() {
        let mut rng = crate::rng::Xoshiro256PlusPlus::new(1);
        for len in [1usize, 63, 64, 65, 130] {
            let x = BitString::random(len, &mut rng);
            assert_eq!(x.len(), len);
            assert!(x.count_ones() <= len);
        }
    }
}
