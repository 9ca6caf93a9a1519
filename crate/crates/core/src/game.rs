//! Finite normal-form games with payoffs in `[0, 1]`, mixed profiles, and
//! exact or sampled regret computation.
//!
//! Payoff tensors are flat and row-major over `(a_1, ..., a_n)`: player 1's
//! action varies slowest, player n's fastest.

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// Tolerance on the sum of a probability vector.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Slack allowed when comparing exact regrets against epsilon.
pub const REGRET_TOLERANCE: f64 = 1e-9;

/// Above this many support-product terms, automatic verification switches to
/// Monte Carlo.
pub const EXACT_TERM_LIMIT: u128 = 1_000_000;

/// Failure probability used for the default Monte Carlo trial count.
pub const DEFAULT_MC_CONFIDENCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct GameSpec {
    action_counts: Vec<usize>,
    payoffs: Vec<Vec<f64>>,
    strides: Vec<usize>,
    name: Option<String>,
    known_equilibrium: Option<MixedProfile>,
}

impl GameSpec {
    /// Builds a game from per-player flat payoff tensors, rejecting
    /// out-of-range payoffs and wrongly sized tensors.
    pub fn new(action_counts: Vec<usize>, payoffs: Vec<Vec<f64>>) -> Result<Self> {
        if action_counts.is_empty() {
            return Err(Error::NoPlayers);
        }
        if let Some(player) = action_counts.iter().position(|&m| m == 0) {
            return Err(Error::EmptyActionSet { player });
        }
        if payoffs.len() != action_counts.len() {
            return Err(Error::PlayerCountMismatch {
                expected: action_counts.len(),
                actual: payoffs.len(),
            });
        }
        let size = action_counts
            .iter()
            .try_fold(1usize, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::InvalidParameter("payoff tensor size overflows".into()))?;
        for (player, tensor) in payoffs.iter().enumerate() {
            if tensor.len() != size {
                return Err(Error::TensorLength {
                    player,
                    expected: size,
                    actual: tensor.len(),
                });
            }
            if let Some((index, &value)) = tensor.iter().enumerate().find(|(_, v)| !(0.0..=1.0).contains(*v)) {
                return Err(Error::PayoffOutOfRange { player, index, value });
            }
        }
        let mut strides = vec![1usize; action_counts.len()];
        for i in (0..action_counts.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * action_counts[i + 1];
        }
        Ok(Self {
            action_counts,
            payoffs,
            strides,
            name: None,
            known_equilibrium: None,
        })
    }

    /// Every player receives `value` at every profile.
    pub fn constant(action_counts: Vec<usize>, value: f64) -> Result<Self> {
        let size: usize = action_counts.iter().product();
        let n = action_counts.len();
        Self::new(action_counts, vec![vec![value; size]; n])
    }

    /// Builds a game from a payoff function evaluated at every pure profile.
    pub fn from_fn<F>(action_counts: Vec<usize>, mut payoff: F) -> Result<Self>
    where
        F: FnMut(usize, &[usize]) -> f64,
    {
        let n = action_counts.len();
        let mut payoffs = vec![Vec::new(); n];
        for profile in PureProfileIter::new(&action_counts) {
            for (player, tensor) in payoffs.iter_mut().enumerate() {
                tensor.push(payoff(player, &profile));
            }
        }
        Self::new(action_counts, payoffs)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_known_equilibrium(mut self, x: MixedProfile) -> Result<Self> {
        x.check_against(&self.action_counts)?;
        self.known_equilibrium = Some(x);
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn known_equilibrium(&self) -> Option<&MixedProfile> {
        self.known_equilibrium.as_ref()
    }

    pub fn num_players(&self) -> usize {
        self.action_counts.len()
    }

    pub fn action_counts(&self) -> &[usize] {
        &self.action_counts
    }

    pub fn num_actions(&self, player: usize) -> usize {
        self.action_counts[player]
    }

    /// Number of pure profiles, `Π m_i`.
    pub fn num_profiles(&self) -> usize {
        self.payoffs[0].len()
    }

    pub fn payoffs(&self, player: usize) -> &[f64] {
        &self.payoffs[player]
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn flat_index(&self, actions: &[usize]) -> usize {
        actions.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn payoff(&self, player: usize, profile: &PureProfile) -> f64 {
        self.payoffs[player][self.flat_index(profile.actions())]
    }

    /// The input size `N = n·m^n`, defined when every player has `m` actions.
    pub fn input_size(&self) -> Option<BigUint> {
        let m = self.action_counts[0];
        if self.action_counts.iter().any(|&mi| mi != m) {
            return None;
        }
        let n = self.num_players();
        Some(BigUint::from(n) * BigUint::from(m).pow(n as u32))
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.num_players() {
            return Err(Error::PlayerOutOfRange {
                player,
                num_players: self.num_players(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_action(&self, player: usize, action: usize) -> Result<()> {
        self.check_player(player)?;
        if action >= self.action_counts[player] {
            return Err(Error::ActionOutOfRange {
                player,
                action,
                num_actions: self.action_counts[player],
            });
        }
        Ok(())
    }
}

/// One probability vector per player.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MixedProfile(Vec<Vec<f64>>);

impl MixedProfile {
    pub fn new(strategies: Vec<Vec<f64>>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::NoPlayers);
        }
        for (player, s) in strategies.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptyActionSet { player });
            }
            if let Some(p) = s.iter().find(|p| !p.is_finite() || **p < 0.0) {
                return Err(Error::NotADistribution {
                    player,
                    reason: format!("entry {p} is negative or not finite"),
                });
            }
            let total: f64 = s.iter().sum();
            if (total - 1.0).abs() > SUM_TOLERANCE {
                return Err(Error::NotADistribution {
                    player,
                    reason: format!("entries sum to {total}"),
                });
            }
        }
        Ok(Self(strategies))
    }

    pub fn uniform(action_counts: &[usize]) -> Self {
        Self(action_counts.iter().map(|&m| vec![1.0 / m as f64; m]).collect())
    }

    /// The degenerate profile putting all mass on `actions`.
    pub fn pure(action_counts: &[usize], actions: &[usize]) -> Result<Self> {
        if action_counts.len() != actions.len() {
            return Err(Error::ProfilePlayers {
                expected: action_counts.len(),
                actual: actions.len(),
            });
        }
        let mut strategies = Vec::with_capacity(actions.len());
        for (player, (&m, &a)) in action_counts.iter().zip(actions).enumerate() {
            if a >= m {
                return Err(Error::ActionOutOfRange {
                    player,
                    action: a,
                    num_actions: m,
                });
            }
            let mut s = vec![0.0; m];
            s[a] = 1.0;
            strategies.push(s);
        }
        Ok(Self(strategies))
    }

    pub fn num_players(&self) -> usize {
        self.0.len()
    }

    pub fn strategies(&self) -> &[Vec<f64>] {
        &self.0
    }

    pub fn strategy(&self, player: usize) -> &[f64] {
        &self.0[player]
    }

    pub fn into_inner(self) -> Vec<Vec<f64>> {
        self.0
    }

    /// Actions with positive probability, with their probabilities.
    pub fn support(&self, player: usize) -> Vec<(usize, f64)> {
        self.0[player]
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, p)| p > 0.0)
            .collect()
    }

    /// `Π_i |supp(x_i)|`, saturating.
    pub fn support_product(&self) -> u128 {
        self.0.iter().fold(1u128, |acc, s| {
            acc.saturating_mul(s.iter().filter(|&&p| p > 0.0).count() as u128)
        })
    }

    pub fn check_against(&self, action_counts: &[usize]) -> Result<()> {
        if self.0.len() != action_counts.len() {
            return Err(Error::ProfilePlayers {
                expected: action_counts.len(),
                actual: self.0.len(),
            });
        }
        for (player, (s, &m)) in self.0.iter().zip(action_counts).enumerate() {
            if s.len() != m {
                return Err(Error::StrategyLength {
                    player,
                    expected: m,
                    actual: s.len(),
                });
            }
        }
        Ok(())
    }

    /// Draws one pure profile by inverse CDF, player by player.
    pub fn sample_pure<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        self.0.iter().map(|s| inverse_cdf(s, rng.gen::<f64>())).collect()
    }
}

/// Inverse-CDF lookup over the stated action order. Zero-probability actions
/// are never returned, even when rounding leaves `u` past the last partial sum.
pub(crate) fn inverse_cdf(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    let mut last = 0;
    for (a, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last = a;
        if u < acc {
            return a;
        }
    }
    last
}

/// One action index per player.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PureProfile(Vec<usize>);

impl PureProfile {
    pub fn new(game: &GameSpec, actions: Vec<usize>) -> Result<Self> {
        if actions.len() != game.num_players() {
            return Err(Error::ProfilePlayers {
                expected: game.num_players(),
                actual: actions.len(),
            });
        }
        for (player, &a) in actions.iter().enumerate() {
            game.check_action(player, a)?;
        }
        Ok(Self(actions))
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn to_mixed(&self, game: &GameSpec) -> MixedProfile {
        MixedProfile::pure(game.action_counts(), &self.0).expect("validated pure profile")
    }
}

/// Odometer over all pure profiles, last player fastest.
pub struct PureProfileIter {
    counts: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl PureProfileIter {
    pub fn new(action_counts: &[usize]) -> Self {
        let next = if action_counts.iter().all(|&m| m > 0) {
            Some(vec![0; action_counts.len()])
        } else {
            None
        };
        Self {
            counts: action_counts.to_vec(),
            next,
        }
    }
}

impl Iterator for PureProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.counts[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// How regrets are computed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum VerifyMode {
    Exact,
    MonteCarlo {
        trials: u64,
        confidence: f64,
        seed: u64,
    },
    /// Exact when the support product is at most [`EXACT_TERM_LIMIT`],
    /// otherwise Monte Carlo with the default trial count.
    Auto {
        seed: u64,
    },
}

impl VerifyMode {
    /// Monte Carlo with the default trial count for `epsilon`.
    pub fn monte_carlo_default(game: &GameSpec, epsilon: f64, seed: u64) -> Self {
        VerifyMode::MonteCarlo {
            trials: default_mc_trials(epsilon, game.action_counts(), DEFAULT_MC_CONFIDENCE),
            confidence: DEFAULT_MC_CONFIDENCE,
            seed,
        }
    }

    pub(crate) fn resolve(self, game: &GameSpec, profile: &MixedProfile, epsilon: f64) -> Self {
        match self {
            VerifyMode::Auto { seed } => {
                if profile.support_product() <= EXACT_TERM_LIMIT {
                    VerifyMode::Exact
                } else {
                    VerifyMode::monte_carlo_default(game, epsilon, seed)
                }
            }
            other => other,
        }
    }
}

/// Trials per estimated quantity so each estimate is within `epsilon / 4`
/// with probability at least `1 - confidence`:
/// `⌈(2/τ²)·ln(2·Σm_i/δ)⌉` with `τ = ε/4`.
pub fn default_mc_trials(epsilon: f64, action_counts: &[usize], confidence: f64) -> u64 {
    let tau = epsilon / 4.0;
    let total: usize = action_counts.iter().sum();
    ((2.0 / (tau * tau)) * (2.0 * total as f64 / confidence).ln()).ceil() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum RegretMode {
    Exact,
    MonteCarlo { trials: u64, confidence: f64 },
}

/// Per-player deviation gains.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegretReport {
    pub regrets: Vec<f64>,
    pub best_deviation: Vec<usize>,
    pub max_regret: f64,
    pub mode: RegretMode,
}

impl RegretReport {
    fn from_parts(deviations: Vec<Vec<f64>>, values: Vec<f64>, mode: RegretMode) -> Self {
        let mut regrets = Vec::with_capacity(values.len());
        let mut best_deviation = Vec::with_capacity(values.len());
        for (dev, value) in deviations.iter().zip(&values) {
            let (best, best_value) = argmax(dev);
            regrets.push(best_value - value);
            best_deviation.push(best);
        }
        let max_regret = regrets.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self {
            regrets,
            best_deviation,
            max_regret,
            mode,
        }
    }
}

fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = 0;
    for (a, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = a;
        }
    }
    (best, values[best])
}

/// Outcome of an ε-equilibrium check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub is_equilibrium: bool,
    pub epsilon: f64,
    /// Set when `epsilon >= 1`: every profile qualifies.
    pub vacuous: bool,
    pub report: RegretReport,
}

/// Σ over the product of the given (action, weight) lists of
/// `weight · tensor[offset]`.
pub(crate) fn contract(tensor: &[f64], strides: &[usize], factors: &[Vec<(usize, f64)>]) -> f64 {
    fn rec(
        tensor: &[f64],
        strides: &[usize],
        factors: &[Vec<(usize, f64)>],
        depth: usize,
        offset: usize,
        weight: f64,
    ) -> f64 {
        if depth == factors.len() {
            return weight * tensor[offset];
        }
        let stride = strides[depth];
        factors[depth]
            .iter()
            .map(|&(a, w)| rec(tensor, strides, factors, depth + 1, offset + a * stride, weight * w))
            .sum()
    }
    rec(tensor, strides, factors, 0, 0, 1.0)
}

fn supports(profile: &MixedProfile) -> Vec<Vec<(usize, f64)>> {
    (0..profile.num_players()).map(|i| profile.support(i)).collect()
}

/// `u_player(x)`, summed over the product of supports.
pub fn expected_payoff(game: &GameSpec, profile: &MixedProfile, player: usize) -> Result<f64> {
    profile.check_against(game.action_counts())?;
    game.check_player(player)?;
    Ok(contract(game.payoffs(player), game.strides(), &supports(profile)))
}

/// `u_player(action, x_{-player})`; the player's own component is ignored.
pub fn deviation_payoff(game: &GameSpec, player: usize, action: usize, profile: &MixedProfile) -> Result<f64> {
    profile.check_against(game.action_counts())?;
    game.check_action(player, action)?;
    let mut factors = supports(profile);
    factors[player] = vec![(action, 1.0)];
    Ok(contract(game.payoffs(player), game.strides(), &factors))
}

/// All deviation payoffs `u_i(a, x_{-i})` for every player and action.
pub(crate) fn deviation_table(game: &GameSpec, profile: &MixedProfile) -> Vec<Vec<f64>> {
    let mut factors = supports(profile);
    (0..game.num_players())
        .map(|i| {
            let own = std::mem::take(&mut factors[i]);
            let row = (0..game.num_actions(i))
                .map(|a| {
                    factors[i] = vec![(a, 1.0)];
                    contract(game.payoffs(i), game.strides(), &factors)
                })
                .collect();
            factors[i] = own;
            row
        })
        .collect()
}

fn exact_regrets(game: &GameSpec, profile: &MixedProfile) -> RegretReport {
    let deviations = deviation_table(game, profile);
    let values = (0..game.num_players())
        .map(|i| contract(game.payoffs(i), game.strides(), &supports(profile)))
        .collect();
    RegretReport::from_parts(deviations, values, RegretMode::Exact)
}

fn monte_carlo_regrets(
    game: &GameSpec,
    profile: &MixedProfile,
    trials: u64,
    confidence: f64,
    seed: u64,
) -> RegretReport {
    let n = game.num_players();
    let strides = game.strides();
    let mut rng = rng::stream(seed, 0);
    let mut dev_sums: Vec<Vec<f64>> = game.action_counts().iter().map(|&m| vec![0.0; m]).collect();
    let mut value_sums = vec![0.0; n];
    for _ in 0..trials {
        let actions = profile.sample_pure(&mut rng);
        let offset = game.flat_index(&actions);
        for i in 0..n {
            let tensor = game.payoffs(i);
            value_sums[i] += tensor[offset];
            let base = offset - actions[i] * strides[i];
            for (b, sum) in dev_sums[i].iter_mut().enumerate() {
                *sum += tensor[base + b * strides[i]];
            }
        }
    }
    let t = trials as f64;
    let deviations = dev_sums
        .into_iter()
        .map(|row| row.into_iter().map(|s| s / t).collect())
        .collect();
    let values = value_sums.into_iter().map(|s| s / t).collect();
    RegretReport::from_parts(deviations, values, RegretMode::MonteCarlo { trials, confidence })
}

/// Per-player regret `max_a u_i(a, x_{-i}) - u_i(x)`.
pub fn regrets(game: &GameSpec, profile: &MixedProfile, mode: VerifyMode) -> Result<RegretReport> {
    profile.check_against(game.action_counts())?;
    Ok(match mode.resolve(game, profile, 1.0) {
        VerifyMode::Exact | VerifyMode::Auto { .. } => exact_regrets(game, profile),
        VerifyMode::MonteCarlo {
            trials,
            confidence,
            seed,
        } => {
            if trials == 0 {
                return Err(Error::InvalidParameter("trials must be at least 1".into()));
            }
            monte_carlo_regrets(game, profile, trials, confidence, seed)
        }
    })
}

/// True iff no player gains more than `epsilon` by deviating (exact mode
/// allows [`REGRET_TOLERANCE`] of slack and accepts `epsilon = 0`).
pub fn is_epsilon_equilibrium(
    game: &GameSpec,
    profile: &MixedProfile,
    epsilon: f64,
    mode: VerifyMode,
) -> Result<Verdict> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::EpsilonRange(epsilon));
    }
    profile.check_against(game.action_counts())?;
    let mode = mode.resolve(game, profile, epsilon.max(f64::MIN_POSITIVE));
    if epsilon == 0.0 && !matches!(mode, VerifyMode::Exact) {
        return Err(Error::EpsilonRange(epsilon));
    }
    let report = regrets(game, profile, mode)?;
    let slack = match report.mode {
        RegretMode::Exact => REGRET_TOLERANCE,
        RegretMode::MonteCarlo { .. } => 0.0,
    };
    Ok(Verdict {
        is_equilibrium: report.max_regret <= epsilon + slack,
        epsilon,
        vacuous: epsilon >= 1.0,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matching_pennies() -> GameSpec {
        GameSpec::from_fn(vec![2, 2], |p, a| {
            let m = if a[0] == a[1] { 1.0 } else { 0.0 };
            if p == 0 {
                m
            } else {
                1.0 - m
            }
        })
        .unwrap()
    }

    fn circular(n: usize) -> GameSpec {
        GameSpec::from_fn(vec![2; n], |p, a| (a[p] == a[(p + 1) % n]) as u8 as f64).unwrap()
    }

    #[test]
    fn matching_pennies_uniform_payoff_is_half() {
        let g = matching_pennies();
        let x = MixedProfile::uniform(g.action_counts());
        assert_eq!(expected_payoff(&g, &x, 0).unwrap(), 0.5);
    }

    #[test]
    fn degenerate_profile_reads_tensor() {
        let g = matching_pennies();
        for actions in PureProfileIter::new(&[2, 2]) {
            let x = MixedProfile::pure(&[2, 2], &actions).unwrap();
            let pure = PureProfile::new(&g, actions).unwrap();
            for p in 0..2 {
                assert_eq!(expected_payoff(&g, &x, p).unwrap(), g.payoff(p, &pure));
            }
        }
    }

    #[test]
    fn constant_game_payoff() {
        let g = GameSpec::constant(vec![3, 2], 0.3).unwrap();
        let x = MixedProfile::new(vec![vec![0.2, 0.3, 0.5], vec![0.9, 0.1]]).unwrap();
        assert!((expected_payoff(&g, &x, 1).unwrap() - 0.3).abs() < 1e-15);
        let r = regrets(&g, &x, VerifyMode::Exact).unwrap();
        assert!(r.regrets.iter().all(|&v| v.abs() < 1e-15));
    }

    #[test]
    fn deviation_payoffs() {
        let g = matching_pennies();
        let pure_h = MixedProfile::pure(&[2, 2], &[1, 0]).unwrap();
        assert_eq!(deviation_payoff(&g, 0, 0, &pure_h).unwrap(), 1.0);
        let uni = MixedProfile::uniform(&[2, 2]);
        assert_eq!(deviation_payoff(&g, 0, 0, &uni).unwrap(), 0.5);
        let c = circular(3);
        assert_eq!(
            deviation_payoff(&c, 0, 0, &MixedProfile::uniform(&[2, 2, 2])).unwrap(),
            0.5
        );
    }

    #[test]
    fn regrets_and_verdicts() {
        let g = matching_pennies();
        let uni = MixedProfile::uniform(&[2, 2]);
        let r = regrets(&g, &uni, VerifyMode::Exact).unwrap();
        assert_eq!(r.regrets, vec![0.0, 0.0]);

        let x = MixedProfile::new(vec![vec![0.5, 0.5], vec![1.0, 0.0]]).unwrap();
        let r = regrets(&g, &x, VerifyMode::Exact).unwrap();
        assert_eq!(r.regrets, vec![0.5, 0.0]);
        assert_eq!(r.max_regret, 0.5);
        assert_eq!(r.best_deviation[0], 0);

        assert!(
            is_epsilon_equilibrium(&g, &x, 0.5, VerifyMode::Exact)
                .unwrap()
                .is_equilibrium
        );
        assert!(
            !is_epsilon_equilibrium(&g, &x, 0.4, VerifyMode::Exact)
                .unwrap()
                .is_equilibrium
        );
        assert!(
            is_epsilon_equilibrium(&g, &uni, 0.0, VerifyMode::Exact)
                .unwrap()
                .is_equilibrium
        );
    }

    #[test]
    fn vacuous_epsilon_is_flagged() {
        let g = matching_pennies();
        let x = MixedProfile::pure(&[2, 2], &[0, 0]).unwrap();
        let v = is_epsilon_equilibrium(&g, &x, 1.0, VerifyMode::Exact).unwrap();
        assert!(v.is_equilibrium && v.vacuous);
    }

    #[test]
    fn zero_epsilon_needs_exact_mode() {
        let g = matching_pennies();
        let x = MixedProfile::uniform(&[2, 2]);
        let mc = VerifyMode::MonteCarlo {
            trials: 10,
            confidence: 0.1,
            seed: 0,
        };
        assert!(is_epsilon_equilibrium(&g, &x, 0.0, mc).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            GameSpec::new(vec![2, 2], vec![vec![0.0; 4], vec![0.0, 0.0, 1.5, 0.0]]),
            Err(Error::PayoffOutOfRange {
                player: 1,
                index: 2,
                ..
            })
        ));
        assert!(matches!(
            GameSpec::new(vec![2, 2], vec![vec![0.0; 4], vec![0.0; 3]]),
            Err(Error::TensorLength {
                player: 1,
                expected: 4,
                actual: 3
            })
        ));
        assert!(MixedProfile::new(vec![vec![0.5, 0.6]]).is_err());
        assert!(MixedProfile::new(vec![vec![-0.1, 1.1]]).is_err());
        let g = matching_pennies();
        let x = MixedProfile::uniform(&[2, 3]);
        assert!(matches!(expected_payoff(&g, &x, 0), Err(Error::StrategyLength { .. })));
        let u = MixedProfile::uniform(&[2, 2]);
        assert!(deviation_payoff(&g, 0, 2, &u).is_err());
        assert!(deviation_payoff(&g, 2, 0, &u).is_err());
    }

    #[test]
    fn input_size_for_uniform_action_counts() {
        let g = GameSpec::constant(vec![3, 3, 3], 0.0).unwrap();
        assert_eq!(g.input_size().unwrap(), BigUint::from(81u32));
        assert!(GameSpec::constant(vec![2, 3], 0.0).unwrap().input_size().is_none());
    }

    #[test]
    fn inverse_cdf_skips_zero_mass() {
        assert_eq!(inverse_cdf(&[0.0, 1.0, 0.0], 0.999_999_999), 1);
        assert_eq!(inverse_cdf(&[0.5, 0.5, 0.0], 1.0), 1);
        assert_eq!(inverse_cdf(&[0.25, 0.75], 0.25), 1);
        assert_eq!(inverse_cdf(&[0.25, 0.75], 0.2), 0);
    }

    #[test]
    fn default_trials_formula() {
        // τ = 0.125, Σm = 4, δ = 1e-6: 128·ln(8e6)
        let t = default_mc_trials(0.5, &[2, 2], 1e-6);
        assert_eq!(t, (128.0f64 * (8e6f64).ln()).ceil() as u64);
    }
}
