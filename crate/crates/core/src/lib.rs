//! Simulation and exact-analysis toolkit for two (1+1)-type search processes on
//! bit strings: the strong-selection-weak-mutation process (SSWM), which accepts
//! offspring with the Kimura fixation probability, and the elitist (1+1) EA.
//!
//! The crate has two halves that cross-validate each other:
//!
//! * a Monte Carlo half — [`dynamics`] runs single trajectories, [`experiments`]
//!   runs reproducible seeded campaigns and parameter sweeps over the benchmark
//!   landscapes in [`fitness`] (OneMax, Cliff, Balance);
//! * an exact half — [`markov`] builds the transition matrix on the ones-count
//!   lattice for level-reducible landscapes and solves for expected hitting
//!   times, drift profiles and negative-drift conditions without sampling noise.
//!
//! [`selection`] evaluates the fixation probability and its analytic bound
//! envelope in a numerically robust way; [`mutation`] provides the local and
//! global operators together with exact jump-probability kernels. [`verify`]
//! bundles the deterministic property suites behind the `verify` CLI verb.
//!
//! Trials are embarrassingly parallel. With the default `parallel` feature the
//! campaign drivers fan out over rayon; the `*_sequential` variants are always
//! available and produce bit-identical results.

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod fitness;
pub mod markov;
pub mod mutation;
pub mod rng;
pub mod selection;
pub mod verify;

pub use dynamics::{accept, run, Algorithm, AlgorithmConfig, BalanceTrajectoryStats, RunResult};
pub use error::{Error, Result};
pub use fitness::{balance, cliff, leading_ones, onemax, BitString, Problem};
pub use markov::{build_chain, drift_profile, expected_hitting_times, OnesLatticeChain};
pub use mutation::{mut_exact, mut_upper_bound, mutate, MutationKind};
pub use selection::{p_fix, p_fix_bounds, SelectionParams};
