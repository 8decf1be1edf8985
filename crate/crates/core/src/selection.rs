//! Fixation probability of a single mutant and its analytic bound envelope.
//!
//! A mutant with fitness advantage `Δf` over the resident genotype fixes in a
//! population of scaled size `N` under selection strength `β` with probability
//!
//! ```text
//! p_fix(Δf) = (1 − e^{−2βΔf}) / (1 − e^{−2NβΔf})
//! ```
//!
//! extended continuously by `p_fix(0) = 1/N`, and identically 1 for `N = 1`
//! (every offspring replaces a population of one). The sign of `Δf` decides
//! the numerically safe evaluation path; see [`p_fix`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scaled population size `N ≥ 1` and selection strength `β > 0`.
///
/// `N` is real-valued: parameter settings like `Nβ = ½ln(11n)` with `β = 1`
/// force non-integer populations, and the fixation formula is well defined
/// for any real `N ≥ 1` (the bound envelope is only proven for integer `N`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionParams {
    n: f64,
    beta: f64,
}

impl SelectionParams {
    /// Validates `N ≥ 1`, `β > 0`. Values `β > 1` are allowed here; callers
    /// that want the canonical range should use [`SelectionParams::strict`].
    pub fn new(n: f64, beta: f64) -> Result<Self> {
        if !n.is_finite() || n < 1.0 {
            return Err(Error::invalid("N", format!("must be a real ≥ 1, got {n}")));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(Error::invalid("beta", format!("must be > 0, got {beta}")));
        }
        Ok(SelectionParams { n, beta })
    }

    /// Like [`SelectionParams::new`] but additionally rejects `β > 1`.
    pub fn strict(n: f64, beta: f64) -> Result<Self> {
        if beta > 1.0 {
            return Err(Error::invalid(
                "beta",
                format!("must lie in (0, 1] under strict_beta, got {beta}"),
            ));
        }
        Self::new(n, beta)
    }

    /// Construct from the product `Nβ` and `β`: `N = Nβ / β`.
    pub fn from_nbeta(nbeta: f64, beta: f64) -> Result<Self> {
        if !nbeta.is_finite() || nbeta <= 0.0 {
            return Err(Error::invalid("nbeta", format!("must be > 0, got {nbeta}")));
        }
        Self::new(nbeta / beta, beta)
    }

    pub fn population(&self) -> f64 {
        self.n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn nbeta(&self) -> f64 {
        self.n * self.beta
    }

    /// True when `β` lies outside the canonical `(0, 1]` range.
    pub fn beta_exceeds_unit(&self) -> bool {
        self.beta > 1.0
    }
}

/// Fixation probability of a mutant with fitness difference `delta_f`.
///
/// Three evaluation regimes keep the result exact to working precision for
/// `|2NβΔf|` up to at least 1e6:
///
/// * `expm1` on both numerator and denominator (handles `|2βΔf| < 1e-4`
///   without cancellation and large positive `Δf` without overflow);
/// * for `2NβΔf < −700`, where `e^{−2NβΔf}` would overflow, the factored
///   log-domain form `e^{2βΔf(N−1)} · (e^{2βΔf}−1)/(e^{2NβΔf}−1)`;
/// * the exact limits `1/N` at `Δf = 0` and `1` for `N = 1`.
pub fn p_fix(delta_f: f64, params: &SelectionParams) -> f64 {
    debug_assert!(delta_f.is_finite());
    let (n, beta) = (params.n, params.beta);
    if n == 1.0 {
        return 1.0;
    }
    if delta_f == 0.0 {
        return 1.0 / n;
    }
    let x = 2.0 * beta * delta_f;
    let y = n * x;
    if y < -700.0 {
        ((n - 1.0) * x).exp() * x.exp_m1() / y.exp_m1()
    } else {
        (-x).exp_m1() / (-y).exp_m1()
    }
}

/// Lower and upper bounds sandwiching [`p_fix`].
///
/// For `Δf ≥ 0`: `2βΔf/(1+2βΔf) ≤ p_fix ≤ 2βΔf/(1−e^{−2NβΔf})`;
/// for `Δf < 0`: `−2βΔf·e^{2NβΔf} ≤ p_fix ≤ e^{2βΔf(N−1)}/(1−e^{2NβΔf})`.
///
/// The upper bound is a bound, not a probability — it may exceed 1. At
/// `Δf = 0` the upper expression is returned as its continuous limit `1/N`.
pub fn p_fix_bounds(delta_f: f64, params: &SelectionParams) -> (f64, f64) {
    debug_assert!(delta_f.is_finite());
    let (n, beta) = (params.n, params.beta);
    let x = 2.0 * beta * delta_f;
    let y = n * x;
    if delta_f >= 0.0 {
        let lower = x / (1.0 + x);
        let upper = if delta_f == 0.0 {
            1.0 / n
        } else {
            x / -(-y).exp_m1()
        };
        (lower, upper)
    } else {
        // e^{2Nβ∆f} underflows harmlessly to 0 for very negative ∆f.
        let lower = -x * y.exp();
        let upper = ((n - 1.0) * x).exp() / -y.exp_m1();
        (lower, upper)
    }
}
