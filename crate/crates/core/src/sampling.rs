//! The sampling method: k i.i.d. draws per player from a mixed profile, the
//! k-uniform random sampling search (k-URS), and Monte Carlo estimates of the
//! probability that a sampled profile moves a deviation payoff by ε/2 or more.
//!
//! Randomness follows the stream schema in [`crate::rng`]: a single draw
//! from `seed` uses stream 0; trial `t` of a batch uses stream `t`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{eq5_bound, is_vacuous_tail};
use crate::error::{Error, Result};
use crate::game::{self, contract, GameSpec, MixedProfile, RegretMode, RegretReport, VerifyMode};
use crate::rng::{self, StreamFactory};
use crate::uniform::OrderedKUniform;

/// Cumulative tables for inverse-CDF draws over each player's support.
/// Lookups agree with a left-to-right scan of the probabilities.
#[derive(Clone, Debug)]
struct CdfTable {
    players: Vec<(Vec<f64>, Vec<usize>)>,
}

impl CdfTable {
    fn new(x: &MixedProfile) -> Self {
        let players = x
            .strategies()
            .iter()
            .map(|s| {
                let mut acc = 0.0;
                let mut cum = Vec::new();
                let mut actions = Vec::new();
                for (a, &p) in s.iter().enumerate() {
                    if p > 0.0 {
                        acc += p;
                        cum.push(acc);
                        actions.push(a);
                    }
                }
                (cum, actions)
            })
            .collect();
        Self { players }
    }

    #[inline]
    fn draw<R: Rng + ?Sized>(&self, player: usize, rng: &mut R) -> usize {
        let (cum, actions) = &self.players[player];
        let u: f64 = rng.gen();
        let idx = cum.partition_point(|&c| c <= u);
        actions[idx.min(actions.len() - 1)]
    }

    /// Same stream consumption as [`sample_from_mixed_with`], counts only.
    fn draw_counts<R: Rng + ?Sized>(&self, k: usize, rng: &mut R, out: &mut [Vec<u32>]) {
        for (player, counts) in out.iter_mut().enumerate() {
            counts.iter_mut().for_each(|c| *c = 0);
            for _ in 0..k {
                counts[self.draw(player, rng)] += 1;
            }
        }
    }
}

/// k i.i.d. inverse-CDF draws per player from `x`, consuming `rng`.
pub fn sample_from_mixed_with<R: Rng + ?Sized>(x: &MixedProfile, k: usize, rng: &mut R) -> Result<OrderedKUniform> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let table = CdfTable::new(x);
    let samples = (0..x.num_players())
        .map(|p| (0..k).map(|_| table.draw(p, rng)).collect())
        .collect();
    Ok(OrderedKUniform::from_parts_unchecked(k, samples))
}

/// k i.i.d. draws per player from `x` on stream `(seed, 0)`.
pub fn sample_from_mixed(x: &MixedProfile, k: usize, seed: u64) -> Result<OrderedKUniform> {
    sample_from_mixed_with(x, k, &mut rng::stream(seed, 0))
}

/// A uniformly random ordered k-uniform profile: every one of the `Π m_i^k`
/// ordered profiles is equally likely.
pub fn uniform_ordered_profile<R: Rng + ?Sized>(action_counts: &[usize], k: usize, rng: &mut R) -> OrderedKUniform {
    let samples = action_counts
        .iter()
        .map(|&m| (0..k).map(|_| rng.gen_range(0..m as u32) as usize).collect())
        .collect();
    OrderedKUniform::from_parts_unchecked(k, samples)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum UrsResult {
    Found {
        profile: OrderedKUniform,
        report: RegretReport,
    },
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UrsOutcome {
    pub result: UrsResult,
    /// Profiles drawn, including the successful one.
    pub iterations: u64,
    pub seed: u64,
}

impl UrsOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self.result, UrsResult::Found { .. })
    }
}

/// Draws uniform ordered k-uniform profiles until one verifies as an
/// ε-equilibrium or `max_iterations` draws have failed.
///
/// Draws come from stream `(seed, 0)`; Monte Carlo verification of draw `t`
/// uses the master seed `sub_seed(verify_seed, t)`.
pub fn urs(
    game: &GameSpec,
    k: usize,
    epsilon: f64,
    max_iterations: u64,
    seed: u64,
    verify_mode: VerifyMode,
) -> Result<UrsOutcome> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::EpsilonRange(epsilon));
    }
    if max_iterations == 0 {
        return Err(Error::InvalidParameter("max_iterations must be at least 1".into()));
    }
    let mut rng = rng::stream(seed, 0);
    for t in 0..max_iterations {
        let profile = uniform_ordered_profile(game.action_counts(), k, &mut rng);
        let mixed = profile.to_mixed(game.action_counts());
        let mode = per_draw_mode(verify_mode, t);
        let verdict = game::is_epsilon_equilibrium(game, &mixed, epsilon, mode)?;
        if verdict.is_equilibrium {
            return Ok(UrsOutcome {
                result: UrsResult::Found {
                    profile,
                    report: verdict.report,
                },
                iterations: t + 1,
                seed,
            });
        }
    }
    Ok(UrsOutcome {
        result: UrsResult::Exhausted,
        iterations: max_iterations,
        seed,
    })
}

fn per_draw_mode(mode: VerifyMode, t: u64) -> VerifyMode {
    match mode {
        VerifyMode::Exact => VerifyMode::Exact,
        VerifyMode::MonteCarlo {
            trials,
            confidence,
            seed,
        } => VerifyMode::MonteCarlo {
            trials,
            confidence,
            seed: rng::sub_seed(seed, t),
        },
        VerifyMode::Auto { seed } => VerifyMode::Auto {
            seed: rng::sub_seed(seed, t),
        },
    }
}

/// Slack for re-verifying a Monte Carlo verdict exactly: the sampled
/// estimates are each within ε/4.
pub fn reverify_slack(report: &RegretReport, epsilon: f64) -> f64 {
    match report.mode {
        RegretMode::Exact => game::REGRET_TOLERANCE,
        RegretMode::MonteCarlo { .. } => epsilon / 4.0,
    }
}

/// Monte Carlo frequency of the forbidden event
/// `|u_i(j, x_{-i}) − u_i(j, s_{-i})| ≥ ε/2` next to its closed-form bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    pub player: usize,
    pub action: usize,
    pub k: usize,
    pub epsilon: f64,
    pub trials: u64,
    pub hits: u64,
    pub empirical: f64,
    pub bound: f64,
    /// The bound exceeds 1, so the comparison says nothing.
    pub vacuous: bool,
    pub std_error: f64,
}

impl GapEstimate {
    /// `empirical ≤ bound + 3·std_error`, or a vacuous bound.
    pub fn within_bound(&self) -> bool {
        self.vacuous || self.empirical <= self.bound + 3.0 * self.std_error
    }
}

/// Single-pair form of [`estimate_gap_probabilities`].
#[allow(clippy::too_many_arguments)]
pub fn estimate_gap_probability(
    game: &GameSpec,
    x: &MixedProfile,
    player: usize,
    action: usize,
    k: usize,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<GapEstimate> {
    Ok(estimate_gap_probabilities(game, x, &[(player, action)], k, epsilon, trials, seed)?.remove(0))
}

/// Estimates the forbidden-event probability for several `(player, action)`
/// pairs from one shared set of `trials` sampled profiles. Trial `t` draws
/// from stream `(seed, t)`, so results do not depend on the worker count.
pub fn estimate_gap_probabilities(
    game: &GameSpec,
    x: &MixedProfile,
    pairs: &[(usize, usize)],
    k: usize,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<GapEstimate>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let bound = eq5_bound(k as u64, epsilon)?;
    x.check_against(game.action_counts())?;
    for &(i, j) in pairs {
        game.check_action(i, j)?;
    }
    let reference: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| game::deviation_payoff(game, i, j, x))
        .collect::<Result<_>>()?;
    let table = CdfTable::new(x);
    let factory = StreamFactory::new(seed);
    let half = epsilon / 2.0;
    let kf = k as f64;

    let hits = (0..trials)
        .into_par_iter()
        .fold(
            || {
                let counts: Vec<Vec<u32>> = game.action_counts().iter().map(|&m| vec![0; m]).collect();
                (vec![0u64; pairs.len()], counts)
            },
            |(mut hits, mut counts), t| {
                let mut rng = factory.stream(t);
                table.draw_counts(k, &mut rng, &mut counts);
                let mut factors: Vec<Vec<(usize, f64)>> = counts
                    .iter()
                    .map(|c| {
                        c.iter()
                            .enumerate()
                            .filter(|(_, &v)| v > 0)
                            .map(|(a, &v)| (a, v as f64 / kf))
                            .collect()
                    })
                    .collect();
                for (h, (&(i, j), &r)) in hits.iter_mut().zip(pairs.iter().zip(&reference)) {
                    let own = std::mem::replace(&mut factors[i], vec![(j, 1.0)]);
                    let value = contract(game.payoffs(i), game.strides(), &factors);
                    factors[i] = own;
                    if (r - value).abs() >= half {
                        *h += 1;
                    }
                }
                (hits, counts)
            },
        )
        .map(|(hits, _)| hits)
        .reduce(
            || vec![0u64; pairs.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    Ok(pairs
        .iter()
        .zip(hits)
        .map(|(&(player, action), hits)| {
            let empirical = hits as f64 / trials as f64;
            GapEstimate {
                player,
                action,
                k,
                epsilon,
                trials,
                hits,
                empirical,
                bound,
                vacuous: is_vacuous_tail(bound),
                std_error: (empirical * (1.0 - empirical) / trials as f64).sqrt(),
            }
        })
        .collect())
}

/// How many of `draws` profiles sampled from `x` are ε-equilibria (exact
/// verification). Draw `t` uses stream `(seed, t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExistenceReport {
    pub k: usize,
    pub epsilon: f64,
    pub draws: u64,
    pub equilibria: u64,
    pub worst_regret: f64,
}

pub fn sampled_equilibrium_rate(
    game: &GameSpec,
    x: &MixedProfile,
    k: usize,
    epsilon: f64,
    draws: u64,
    seed: u64,
) -> Result<ExistenceReport> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    x.check_against(game.action_counts())?;
    let factory = StreamFactory::new(seed);
    let regrets: Vec<f64> = (0..draws)
        .into_par_iter()
        .map(|t| {
            let s = sample_from_mixed_with(x, k, &mut factory.stream(t))?;
            Ok(game::regrets(game, &s.to_mixed(game.action_counts()), VerifyMode::Exact)?.max_regret)
        })
        .collect::<Result<_>>()?;
    Ok(ExistenceReport {
        k,
        epsilon,
        draws,
        equilibria: regrets
            .iter()
            .filter(|&&r| r <= epsilon + game::REGRET_TOLERANCE)
            .count() as u64,
        worst_regret: regrets.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matching_pennies() -> GameSpec {
        GameSpec::from_fn(vec![2, 2], |p, a| {
            let m = (a[0] == a[1]) as u8 as f64;
            if p == 0 {
                m
            } else {
                1.0 - m
            }
        })
        .unwrap()
    }

    #[test]
    fn pure_profile_samples_its_atom() {
        let x = MixedProfile::pure(&[3, 2], &[2, 1]).unwrap();
        let s = sample_from_mixed(&x, 7, 5).unwrap();
        assert!(s.samples()[0].iter().all(|&a| a == 2));
        assert!(s.samples()[1].iter().all(|&a| a == 1));
    }

    #[test]
    fn sampling_is_deterministic() {
        let x = MixedProfile::new(vec![vec![0.2, 0.3, 0.5], vec![0.6, 0.4]]).unwrap();
        assert_eq!(
            sample_from_mixed(&x, 50, 9).unwrap(),
            sample_from_mixed(&x, 50, 9).unwrap()
        );
        assert_ne!(
            sample_from_mixed(&x, 50, 9).unwrap(),
            sample_from_mixed(&x, 50, 10).unwrap()
        );
    }

    #[test]
    fn counts_path_matches_ordered_path() {
        let x = MixedProfile::new(vec![vec![0.2, 0.0, 0.8], vec![0.5, 0.5]]).unwrap();
        let s = sample_from_mixed_with(&x, 40, &mut rng::stream(3, 4)).unwrap();
        let mut counts = vec![vec![0u32; 3], vec![0u32; 2]];
        CdfTable::new(&x).draw_counts(40, &mut rng::stream(3, 4), &mut counts);
        assert_eq!(s.to_counts(&[3, 2]).counts(), counts.as_slice());
        assert_eq!(counts[0][1], 0);
    }

    #[test]
    fn uniform_frequency_concentrates() {
        let x = MixedProfile::uniform(&[2]);
        let s = sample_from_mixed(&x, 100_000, 1).unwrap();
        let zeros = s.samples()[0].iter().filter(|&&a| a == 0).count() as f64 / 1e5;
        assert!((zeros - 0.5).abs() < 0.01);
    }

    #[test]
    fn urs_constant_game_first_draw() {
        let g = GameSpec::constant(vec![3, 3], 0.2).unwrap();
        let out = urs(&g, 5, 0.1, 10, 0, VerifyMode::Exact).unwrap();
        assert!(out.is_found());
        assert_eq!(out.iterations, 1);
    }

    #[test]
    fn urs_exhausts_when_nothing_qualifies() {
        let out = urs(&matching_pennies(), 1, 0.4, 1, 0, VerifyMode::Exact).unwrap();
        assert_eq!(out.result, UrsResult::Exhausted);
        assert_eq!(out.iterations, 1);
        assert!(urs(&matching_pennies(), 1, 0.4, 0, 0, VerifyMode::Exact).is_err());
    }

    #[test]
    fn gap_estimate_vacuous_bound() {
        let g = matching_pennies();
        let x = MixedProfile::uniform(&[2, 2]);
        let e = estimate_gap_probability(&g, &x, 0, 0, 8, 0.7, 2000, 1).unwrap();
        assert!(e.vacuous && e.bound > 1.0);
        assert!(e.within_bound());
        assert!(e.hits <= e.trials);
    }

    #[test]
    fn gap_estimate_independent_of_pair_batching() {
        let g = matching_pennies();
        let x = MixedProfile::uniform(&[2, 2]);
        let batch = estimate_gap_probabilities(&g, &x, &[(0, 0), (1, 1)], 12, 0.5, 3000, 4).unwrap();
        let single = estimate_gap_probability(&g, &x, 1, 1, 12, 0.5, 3000, 4).unwrap();
        assert_eq!(batch[1], single);
        assert!(batch[0].hits > 0);
    }

    #[test]
    fn existence_rate_on_matching_pennies() {
        let g = matching_pennies();
        let r = sampled_equilibrium_rate(&g, &MixedProfile::uniform(&[2, 2]), 63, 0.7, 200, 0).unwrap();
        assert_eq!(r.equilibria, 200);
    }
}
