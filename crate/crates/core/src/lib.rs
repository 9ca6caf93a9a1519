//! Approximate Nash equilibria built from k-uniform strategies.
//!
//! A k-uniform strategy plays each action with probability `c/k` for an
//! integer `c`; equivalently, it is the empirical distribution of `k` pure
//! actions. Sampling `k = O(log n + log m)` actions per player from an exact
//! equilibrium yields an ε-equilibrium with positive probability, so such
//! profiles always exist and can be found by exhaustive search or by
//! uniform random sampling.
//!
//! * [`game`]: normal-form games, mixed profiles, exact and Monte Carlo regrets.
//! * [`uniform`]: k-uniform strategies, counting, enumeration, exhaustive search.
//! * [`sampling`]: sampling from an equilibrium, k-URS, tail-event estimates.
//! * [`bounds`]: closed-form thresholds and tails, entropy, the counting lemma.
//! * [`generators`]: game families with exact equilibria, 2-player solver.
//! * [`io`] and [`experiments`]: game files and the experiment drivers.

pub mod bounds;
pub mod error;
pub mod experiments;
pub mod game;
pub mod generators;
mod hp;
pub mod io;
pub mod rng;
pub mod sampling;
pub mod uniform;

pub use error::{Error, Result};
pub use game::{
    deviation_payoff, expected_payoff, is_epsilon_equilibrium, regrets, GameSpec, MixedProfile, PureProfile,
    RegretReport, Verdict, VerifyMode,
};
pub use uniform::{KUniformCounts, OrderedKUniform, SearchOutcome};
