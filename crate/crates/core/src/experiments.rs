//! Experiment drivers: the forbidden-event tail sweep and the entropy versus
//! random-sampling cost study. Both emit flat records renderable as CSV or
//! JSON with identical values.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::{self, expected_samples_bound_for, k_theorem2, max_entropy_bits, shannon_entropy};
use crate::error::{Error, Result};
use crate::game::{GameSpec, VerifyMode};
use crate::rng::sub_seed;
use crate::sampling::{estimate_gap_probabilities, urs};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The bound is not asserted for this configuration (practical k).
    Unchecked,
}

impl Verdict {
    pub fn is_failure(self) -> bool {
        self == Verdict::Fail
    }
}

/// One `(k, player, action)` point of the tail sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eq5Record {
    pub k: u64,
    pub player: usize,
    pub action: usize,
    pub empirical: f64,
    pub bound: f64,
    pub std_error: f64,
    pub trials: u64,
    pub verdict: Verdict,
}

/// Which `(player, action)` pairs a sweep measures by default: every pair
/// when `n·m ≤ 16`, otherwise action 0 of each player.
pub fn default_pairs(action_counts: &[usize]) -> Vec<(usize, usize)> {
    let n = action_counts.len();
    let m = action_counts.iter().copied().max().unwrap_or(0);
    if n * m <= 16 {
        action_counts
            .iter()
            .enumerate()
            .flat_map(|(i, &mi)| (0..mi).map(move |j| (i, j)))
            .collect()
    } else {
        (0..n).map(|i| (i, 0)).collect()
    }
}

/// For each k, estimates every configured forbidden-event probability by
/// sampling from the game's known equilibrium and compares it with
/// `8e^{−kε²/8}/ε`. Point `k_values[t]` uses the master seed `sub_seed(seed, t)`.
pub fn run_eq5_sweep(
    game: &GameSpec,
    epsilon: f64,
    k_values: &[u64],
    trials: u64,
    seed: u64,
    pairs: Option<&[(usize, usize)]>,
) -> Result<Vec<Eq5Record>> {
    let x = game.known_equilibrium().ok_or(Error::MissingEquilibrium)?;
    let pairs = pairs.map_or_else(|| default_pairs(game.action_counts()), <[_]>::to_vec);
    let mut records = Vec::with_capacity(k_values.len() * pairs.len());
    for (t, &k) in k_values.iter().enumerate() {
        if k == 0 {
            // Nothing to sample; the tail bound 8/ε is vacuous.
            let bound = bounds::eq5_bound(0, epsilon)?;
            records.extend(pairs.iter().map(|&(player, action)| Eq5Record {
                k,
                player,
                action,
                empirical: 0.0,
                bound,
                std_error: 0.0,
                trials: 0,
                verdict: Verdict::Pass,
            }));
            continue;
        }
        let estimates =
            estimate_gap_probabilities(game, x, &pairs, k as usize, epsilon, trials, sub_seed(seed, t as u64))?;
        records.extend(estimates.into_iter().map(|e| Eq5Record {
            k,
            player: e.player,
            action: e.action,
            empirical: e.empirical,
            bound: e.bound,
            std_error: e.std_error,
            trials: e.trials,
            verdict: if e.within_bound() { Verdict::Pass } else { Verdict::Fail },
        }));
    }
    Ok(records)
}

/// Random-sampling cost on one game with a known equilibrium.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropySamplesRecord {
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub k: u64,
    pub epsilon: f64,
    pub seed: u64,
    pub runs: u64,
    pub mean_iterations: f64,
    pub max_iterations: u64,
    /// Runs that hit the iteration cap; their count enters the mean as the cap.
    pub exhausted_runs: u64,
    pub entropy_bits: f64,
    pub max_entropy_bits: f64,
    pub bound_log2: f64,
    pub bound: f64,
    /// Whether k reaches the threshold under which the sample bound is proven.
    pub theorem_k: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UrsStudy {
    pub k: u64,
    pub epsilon: f64,
    pub runs: u64,
    pub max_iterations: u64,
    pub seed: u64,
    pub verify_mode: VerifyMode,
}

/// Runs k-URS `runs` times per game (run `r` of game `g` uses
/// `sub_seed(sub_seed(seed, g), r)`) and sets the mean draw count against
/// `4·2^{k(Σlog2 m_i − H(x))}`.
pub fn run_entropy_samples(games: &[(String, GameSpec)], study: UrsStudy) -> Result<Vec<EntropySamplesRecord>> {
    let UrsStudy {
        k,
        epsilon,
        runs,
        max_iterations,
        seed,
        verify_mode,
    } = study;
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    if k == 0 || k > bounds::ADDRESSABLE_K {
        return Err(Error::InvalidParameter(format!("k = {k} is not addressable")));
    }
    let mut records = Vec::with_capacity(games.len());
    for (g, (label, game)) in games.iter().enumerate() {
        let x = game.known_equilibrium().ok_or(Error::MissingEquilibrium)?;
        let entropy = shannon_entropy(x);
        let max_entropy = max_entropy_bits(game.action_counts());
        let bound = expected_samples_bound_for(game.action_counts(), k, entropy.min(max_entropy))?;
        let n = game.num_players();
        let m = game.action_counts().iter().copied().max().unwrap();
        let theorem_k = match k_theorem2(n, m, epsilon.min(1.0))?.as_u64() {
            Some(threshold) => k >= threshold,
            None => false,
        };
        let game_seed = sub_seed(seed, g as u64);
        let mut total = 0u64;
        let mut worst = 0u64;
        let mut exhausted = 0u64;
        for r in 0..runs {
            let out = urs(
                game,
                k as usize,
                epsilon,
                max_iterations,
                sub_seed(game_seed, r),
                verify_mode,
            )?;
            total += out.iterations;
            worst = worst.max(out.iterations);
            exhausted += u64::from(!out.is_found());
        }
        let mean = total as f64 / runs as f64;
        let verdict = if mean <= bound.approx {
            Verdict::Pass
        } else if theorem_k {
            Verdict::Fail
        } else {
            Verdict::Unchecked
        };
        records.push(EntropySamplesRecord {
            family: label.clone(),
            n,
            m,
            k,
            epsilon,
            seed: game_seed,
            runs,
            mean_iterations: mean,
            max_iterations: worst,
            exhausted_runs: exhausted,
            entropy_bits: entropy,
            max_entropy_bits: max_entropy,
            bound_log2: bound.log2,
            bound: bound.approx,
            theorem_k,
            verdict,
        });
    }
    Ok(records)
}

/// Writes records as an RFC 4180 CSV table with a header row.
pub fn write_csv<T: Serialize, W: Write>(records: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes records as a pretty-printed JSON array.
pub fn write_json<T: Serialize, W: Write>(records: &[T], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, records)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_records<T: Serialize, W: Write>(records: &[T], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Json => write_json(records, out),
        OutputFormat::Csv => write_csv(records, out),
    }
}
