//! k-uniform strategies: ordered sample tuples, count vectors, counting,
//! lexicographic enumeration and exhaustive search.
//!
//! Count vectors of one player are enumerated in descending lexicographic
//! order, `(k, 0, …, 0)` first and `(0, …, 0, k)` last. Profiles are the
//! mixed-radix product of those sequences with player 1 slowest.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{self, GameSpec, MixedProfile, RegretReport, VerifyMode, REGRET_TOLERANCE};

/// Per player, an ordered list of `k` pure actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderedKUniform {
    k: usize,
    samples: Vec<Vec<usize>>,
}

impl OrderedKUniform {
    pub fn new(action_counts: &[usize], k: usize, samples: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if samples.len() != action_counts.len() {
            return Err(Error::ProfilePlayers {
                expected: action_counts.len(),
                actual: samples.len(),
            });
        }
        for (player, (s, &m)) in samples.iter().zip(action_counts).enumerate() {
            if s.len() != k {
                return Err(Error::KMismatch {
                    player,
                    k,
                    actual: s.len(),
                });
            }
            if let Some(&action) = s.iter().find(|&&a| a >= m) {
                return Err(Error::ActionOutOfRange {
                    player,
                    action,
                    num_actions: m,
                });
            }
        }
        Ok(Self { k, samples })
    }

    pub(crate) fn from_parts_unchecked(k: usize, samples: Vec<Vec<usize>>) -> Self {
        Self { k, samples }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn samples(&self) -> &[Vec<usize>] {
        &self.samples
    }

    pub fn to_counts(&self, action_counts: &[usize]) -> KUniformCounts {
        let counts = self
            .samples
            .iter()
            .zip(action_counts)
            .map(|(s, &m)| {
                let mut c = vec![0u32; m];
                for &a in s {
                    c[a] += 1;
                }
                c
            })
            .collect();
        KUniformCounts { k: self.k, counts }
    }

    pub fn to_mixed(&self, action_counts: &[usize]) -> MixedProfile {
        self.to_counts(action_counts).to_mixed()
    }
}

/// Per player, a count vector summing to `k`; the induced strategy plays
/// action `a` with probability `c_a / k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KUniformCounts {
    k: usize,
    counts: Vec<Vec<u32>>,
}

impl KUniformCounts {
    pub fn new(k: usize, counts: Vec<Vec<u32>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if counts.is_empty() {
            return Err(Error::NoPlayers);
        }
        for (player, c) in counts.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::EmptyActionSet { player });
            }
            let total: u64 = c.iter().map(|&v| v as u64).sum();
            if total != k as u64 {
                return Err(Error::KMismatch {
                    player,
                    k,
                    actual: total as usize,
                });
            }
        }
        Ok(Self { k, counts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[Vec<u32>] {
        &self.counts
    }

    pub fn to_mixed(&self) -> MixedProfile {
        let k = self.k as f64;
        MixedProfile::new(
            self.counts
                .iter()
                .map(|c| c.iter().map(|&v| v as f64 / k).collect())
                .collect(),
        )
        .expect("count vectors summing to k form distributions")
    }
}

/// `Π_i m_i^k`, the number of ordered k-uniform profiles.
pub fn count_ordered(action_counts: &[usize], k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    Ok(action_counts.iter().map(|&m| BigUint::from(m).pow(k as u32)).product())
}

/// `Π_i C(m_i + k - 1, k)`, the number of multiset (count vector) profiles.
pub fn count_multiset(action_counts: &[usize], k: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    Ok(action_counts
        .iter()
        .map(|&m| binomial(BigUint::from(m + k - 1), BigUint::from(k)))
        .product())
}

/// Number of count vectors of length `m` summing to `k`, if it fits in a u128.
pub fn compositions_count(m: usize, k: usize) -> Option<u128> {
    if m == 0 {
        return if k == 0 { Some(1) } else { Some(0) };
    }
    // C(k + m - 1, m - 1) computed incrementally; each prefix is an integer.
    let r = (m - 1).min(k) as u128;
    let top = (k + m - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc.checked_mul(top - r + i)? / i;
    }
    Some(acc)
}

/// Descending-lexicographic count vectors of length `m` summing to `k`.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(m: usize, k: usize) -> Self {
        Self {
            next: Some(first_composition(m, k)),
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if advance_composition(&mut succ) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

fn first_composition(m: usize, k: usize) -> Vec<u32> {
    let mut c = vec![0u32; m];
    c[0] = k as u32;
    c
}

/// Steps to the descending-lexicographic successor in place; false at the end.
fn advance_composition(c: &mut [u32]) -> bool {
    let m = c.len();
    if m < 2 {
        return false;
    }
    let Some(i) = (0..m - 1).rev().find(|&i| c[i] > 0) else {
        return false;
    };
    let tail: u32 = c[i + 1..].iter().sum();
    c[i] -= 1;
    c[i + 1] = tail + 1;
    for v in &mut c[i + 2..] {
        *v = 0;
    }
    true
}

/// Position of `c` in the descending-lexicographic order.
pub fn rank_composition(c: &[u32]) -> u128 {
    let m = c.len();
    let mut remaining: u32 = c.iter().sum();
    let mut rank = 0u128;
    for (i, &ci) in c.iter().enumerate().take(m.saturating_sub(1)) {
        // Vectors with a larger entry at position i come first.
        for larger in (ci + 1)..=remaining {
            rank += compositions_count(m - i - 1, (remaining - larger) as usize).unwrap_or(u128::MAX);
        }
        remaining -= ci;
    }
    rank
}

/// Inverse of [`rank_composition`].
pub fn unrank_composition(m: usize, k: usize, mut rank: u128) -> Option<Vec<u32>> {
    if rank >= compositions_count(m, k)? {
        return None;
    }
    let mut c = vec![0u32; m];
    let mut remaining = k as u32;
    for (i, slot) in c.iter_mut().enumerate().take(m - 1) {
        let mut value = remaining;
        loop {
            let block = compositions_count(m - i - 1, (remaining - value) as usize)?;
            if rank < block {
                break;
            }
            rank -= block;
            value -= 1;
        }
        *slot = value;
        remaining -= value;
    }
    c[m - 1] = remaining;
    Some(c)
}

/// Every multiset profile exactly once, player 1 slowest.
pub fn enumerate_multiset_profiles(action_counts: &[usize], k: usize) -> Result<impl Iterator<Item = KUniformCounts>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let counts = action_counts.to_vec();
    let mut next: Option<Vec<Vec<u32>>> = Some(counts.iter().map(|&m| first_composition(m, k)).collect());
    Ok(std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if advance_profile(&mut succ, &counts, k).is_some() {
            next = Some(succ);
        }
        Some(KUniformCounts { k, counts: current })
    }))
}

/// Odometer step; returns the slowest player whose vector changed.
fn advance_profile(profile: &mut [Vec<u32>], action_counts: &[usize], k: usize) -> Option<usize> {
    for p in (0..profile.len()).rev() {
        if advance_composition(&mut profile[p]) {
            return Some(p);
        }
        profile[p] = first_composition(action_counts[p], k);
    }
    None
}

/// Profile at mixed-radix index `rank` (player 1 most significant).
pub fn unrank_profile(action_counts: &[usize], k: usize, mut rank: u128) -> Option<KUniformCounts> {
    let radices: Vec<u128> = action_counts
        .iter()
        .map(|&m| compositions_count(m, k))
        .collect::<Option<_>>()?;
    let mut counts = vec![Vec::new(); action_counts.len()];
    for p in (0..action_counts.len()).rev() {
        let digit = rank % radices[p];
        rank /= radices[p];
        counts[p] = unrank_composition(action_counts[p], k, digit)?;
    }
    if rank != 0 {
        return None;
    }
    Some(KUniformCounts { k, counts })
}

/// Deviation payoffs against the current count profile, kept up to date as
/// one player's counts change.
///
/// `dev[i][a]` holds `Σ_{a_{-i}} Π_{j≠i} c_j(a_j) · u_i(a, a_{-i})`, i.e. the
/// deviation payoff scaled by `k^{n-1}`.
struct IncrementalEvaluator<'g> {
    game: &'g GameSpec,
    k: f64,
    scale: f64,
    counts: Vec<Vec<u32>>,
    dev: Vec<Vec<f64>>,
}

impl<'g> IncrementalEvaluator<'g> {
    fn new(game: &'g GameSpec, counts: Vec<Vec<u32>>, k: usize) -> Self {
        let n = game.num_players();
        let mut e = Self {
            game,
            k: k as f64,
            scale: (k as f64).powi(n as i32 - 1),
            counts,
            dev: game.action_counts().iter().map(|&m| vec![0.0; m]).collect(),
        };
        e.recompute();
        e
    }

    fn factors(&self) -> Vec<Vec<(usize, f64)>> {
        self.counts
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, &v)| v > 0)
                    .map(|(a, &v)| (a, v as f64))
                    .collect()
            })
            .collect()
    }

    fn recompute(&mut self) {
        let mut factors = self.factors();
        for i in 0..self.game.num_players() {
            let own = std::mem::take(&mut factors[i]);
            for a in 0..self.game.num_actions(i) {
                factors[i] = vec![(a, 1.0)];
                self.dev[i][a] = game::contract(self.game.payoffs(i), self.game.strides(), &factors);
            }
            factors[i] = own;
        }
    }

    /// Replaces player `p`'s counts, updating every other player's row by
    /// the sparse difference.
    fn set_counts(&mut self, p: usize, new_counts: &[u32]) {
        let delta: Vec<(usize, f64)> = new_counts
            .iter()
            .zip(&self.counts[p])
            .enumerate()
            .filter(|(_, (n, o))| n != o)
            .map(|(b, (&n, &o))| (b, n as f64 - o as f64))
            .collect();
        self.counts[p].copy_from_slice(new_counts);
        if delta.is_empty() {
            return;
        }
        let n = self.game.num_players();
        if n == 2 {
            let i = 1 - p;
            let tensor = self.game.payoffs(i);
            let strides = self.game.strides();
            for (a, row) in self.dev[i].iter_mut().enumerate() {
                let base = a * strides[i];
                *row += delta
                    .iter()
                    .map(|&(b, d)| d * tensor[base + b * strides[p]])
                    .sum::<f64>();
            }
            return;
        }
        let mut factors = self.factors();
        factors[p] = delta;
        for i in (0..n).filter(|&i| i != p) {
            let own = std::mem::take(&mut factors[i]);
            for a in 0..self.game.num_actions(i) {
                factors[i] = vec![(a, 1.0)];
                self.dev[i][a] += game::contract(self.game.payoffs(i), self.game.strides(), &factors);
            }
            factors[i] = own;
        }
    }

    fn max_regret(&self) -> f64 {
        self.dev
            .iter()
            .zip(&self.counts)
            .map(|(row, c)| {
                let best = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let value: f64 = row.iter().zip(c).map(|(d, &v)| d * v as f64).sum::<f64>() / self.k;
                (best - value) / self.scale
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Slack on the incremental regret before the exact re-check decides.
const CANDIDATE_SLACK: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum SearchOutcome {
    Found {
        profile: KUniformCounts,
        report: RegretReport,
        profiles_checked: u64,
    },
    NotFound {
        profiles_checked: u64,
    },
}

impl SearchOutcome {
    pub fn profiles_checked(&self) -> u64 {
        match self {
            SearchOutcome::Found { profiles_checked, .. } | SearchOutcome::NotFound { profiles_checked } => {
                *profiles_checked
            }
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

fn check_search_args(epsilon: f64, k: usize, budget: Option<u64>) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(Error::EpsilonRange(epsilon));
    }
    if budget == Some(0) {
        return Err(Error::InvalidParameter("budget must be at least 1".into()));
    }
    Ok(())
}

fn exact_check(game: &GameSpec, counts: &[Vec<u32>], k: usize, epsilon: f64) -> Option<(KUniformCounts, RegretReport)> {
    let profile = KUniformCounts {
        k,
        counts: counts.to_vec(),
    };
    let report = game::regrets(game, &profile.to_mixed(), VerifyMode::Exact).ok()?;
    (report.max_regret <= epsilon + REGRET_TOLERANCE).then_some((profile, report))
}

/// Scans `len` consecutive profiles starting at `start` (already unranked),
/// returning the offset of the first ε-equilibrium.
fn scan(
    game: &GameSpec,
    k: usize,
    epsilon: f64,
    start: Vec<Vec<u32>>,
    len: u64,
    stop: Option<&AtomicU64>,
    base_index: u64,
) -> (Option<(u64, KUniformCounts, RegretReport)>, u64) {
    let action_counts = game.action_counts();
    let n = game.num_players();
    let mut profile = start;
    let mut eval = IncrementalEvaluator::new(game, profile.clone(), k);
    let mut checked = 0u64;
    while checked < len {
        if let Some(stop) = stop {
            if checked.is_multiple_of(1024) && stop.load(Ordering::Relaxed) < base_index + checked {
                break;
            }
        }
        checked += 1;
        if eval.max_regret() <= epsilon + CANDIDATE_SLACK {
            if let Some((p, r)) = exact_check(game, &profile, k, epsilon) {
                return (Some((checked - 1, p, r)), checked);
            }
        }
        if checked == len {
            break;
        }
        let Some(slowest) = advance_profile(&mut profile, action_counts, k) else {
            break;
        };
        if slowest + 1 < n {
            // A carry: refresh from scratch, which also resets rounding drift.
            eval.counts.clone_from(&profile);
            eval.recompute();
        } else {
            eval.set_counts(slowest, &profile[slowest]);
        }
    }
    (None, checked)
}

/// First k-uniform ε-equilibrium in enumeration order, or the number of
/// profiles checked when the enumeration or `budget` runs out.
pub fn exhaustive_search(game: &GameSpec, k: usize, epsilon: f64, budget: Option<u64>) -> Result<SearchOutcome> {
    check_search_args(epsilon, k, budget)?;
    let start = game.action_counts().iter().map(|&m| first_composition(m, k)).collect();
    let (hit, checked) = scan(game, k, epsilon, start, budget.unwrap_or(u64::MAX), None, 0);
    Ok(match hit {
        Some((_, profile, report)) => SearchOutcome::Found {
            profile,
            report,
            profiles_checked: checked,
        },
        None => SearchOutcome::NotFound {
            profiles_checked: checked,
        },
    })
}

/// [`exhaustive_search`] over range-partitioned chunks on the rayon pool.
/// The hit with the smallest enumeration index wins, so the outcome equals
/// the serial one.
pub fn exhaustive_search_parallel(
    game: &GameSpec,
    k: usize,
    epsilon: f64,
    budget: Option<u64>,
) -> Result<SearchOutcome> {
    check_search_args(epsilon, k, budget)?;
    let total = count_multiset(game.action_counts(), k)?;
    let total: u64 =
        u64::try_from(total).map_err(|_| Error::InvalidParameter("profile space too large to partition".into()))?;
    let limit = budget.map_or(total, |b| b.min(total));
    let chunks = (rayon::current_num_threads() as u64 * 8).max(1);
    let chunk_len = limit.div_ceil(chunks).max(1);
    let best = AtomicU64::new(u64::MAX);
    let hits: Vec<(u64, KUniformCounts, RegretReport)> = (0..limit.div_ceil(chunk_len))
        .into_par_iter()
        .filter_map(|c| {
            let lo = c * chunk_len;
            if lo > best.load(Ordering::Relaxed) {
                return None;
            }
            let len = chunk_len.min(limit - lo);
            let start = unrank_profile(game.action_counts(), k, lo as u128)?.counts;
            let (hit, _) = scan(game, k, epsilon, start, len, Some(&best), lo);
            hit.map(|(offset, p, r)| {
                best.fetch_min(lo + offset, Ordering::Relaxed);
                (lo + offset, p, r)
            })
        })
        .collect();
    Ok(match hits.into_iter().min_by_key(|h| h.0) {
        Some((index, profile, report)) => SearchOutcome::Found {
            profile,
            report,
            profiles_checked: index + 1,
        },
        None => SearchOutcome::NotFound {
            profiles_checked: limit,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

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
    fn to_mixed_frequencies() {
        let s = OrderedKUniform::new(&[2], 3, vec![vec![0, 1, 0]]).unwrap();
        let x = s.to_mixed(&[2]);
        assert_eq!(x.strategy(0), &[2.0 / 3.0, 1.0 / 3.0]);
        let c = KUniformCounts::new(4, vec![vec![0, 4]]).unwrap();
        assert_eq!(c.to_mixed().strategy(0), &[0.0, 1.0]);
        let same = OrderedKUniform::new(&[3], 5, vec![vec![2; 5]]).unwrap();
        assert_eq!(same.to_mixed(&[3]).strategy(0), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn rejects_malformed_strategies() {
        assert!(OrderedKUniform::new(&[2], 2, vec![vec![0]]).is_err());
        assert!(OrderedKUniform::new(&[2], 1, vec![vec![2]]).is_err());
        assert!(KUniformCounts::new(3, vec![vec![1, 1]]).is_err());
        assert!(count_ordered(&[2], 0).is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(count_ordered(&[2, 2], 3).unwrap(), BigUint::from(64u32));
        assert_eq!(count_ordered(&[5], 2).unwrap(), BigUint::from(25u32));
        assert_eq!(count_ordered(&[3, 3, 3], 2).unwrap(), BigUint::from(729u32));
        assert_eq!(count_multiset(&[2, 2], 3).unwrap(), BigUint::from(16u32));
        assert_eq!(count_multiset(&[3, 3], 2).unwrap(), BigUint::from(36u32));
        assert_eq!(count_multiset(&[4, 7, 2], 1).unwrap(), BigUint::from(56u32));
    }

    #[test]
    fn single_player_order() {
        let seq: Vec<_> = Compositions::new(2, 2).collect();
        assert_eq!(seq, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let seq: Vec<_> = Compositions::new(3, 2).collect();
        assert_eq!(
            seq,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
    }

    #[test]
    fn profile_enumeration() {
        let all: Vec<_> = enumerate_multiset_profiles(&[2, 2], 3).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all[0].counts(), &[vec![3, 0], vec![3, 0]]);
        assert_eq!(all[1].counts(), &[vec![3, 0], vec![2, 1]]);
        assert_eq!(all[15].counts(), &[vec![0, 3], vec![0, 3]]);
    }

    #[test]
    fn enumeration_matches_counts_on_grid() {
        for n in 1..=2 {
            for m in 1..=4 {
                for k in 1..=5 {
                    let counts = vec![m; n];
                    let seen: HashSet<_> = enumerate_multiset_profiles(&counts, k).unwrap().collect();
                    let listed = enumerate_multiset_profiles(&counts, k).unwrap().count();
                    assert_eq!(seen.len(), listed);
                    assert_eq!(BigUint::from(listed), count_multiset(&counts, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for m in 1..=5 {
            for k in 0..=6 {
                for (r, c) in Compositions::new(m, k).enumerate() {
                    assert_eq!(rank_composition(&c), r as u128);
                    assert_eq!(unrank_composition(m, k, r as u128).unwrap(), c);
                }
                assert!(unrank_composition(m, k, compositions_count(m, k).unwrap()).is_none());
            }
        }
        for (r, p) in enumerate_multiset_profiles(&[3, 2, 4], 3).unwrap().enumerate() {
            assert_eq!(unrank_profile(&[3, 2, 4], 3, r as u128).unwrap(), p);
        }
    }

    #[test]
    fn search_matching_pennies() {
        let g = matching_pennies();
        match exhaustive_search(&g, 2, 0.0, None).unwrap() {
            SearchOutcome::Found {
                profile,
                profiles_checked,
                ..
            } => {
                assert_eq!(profile.counts(), &[vec![1, 1], vec![1, 1]]);
                assert_eq!(profiles_checked, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            exhaustive_search(&g, 1, 0.4, None).unwrap(),
            SearchOutcome::NotFound { profiles_checked: 4 }
        );
    }

    #[test]
    fn search_constant_game_first_profile() {
        let g = GameSpec::constant(vec![3, 2], 0.4).unwrap();
        let out = exhaustive_search(&g, 1, 0.1, None).unwrap();
        assert!(out.is_found());
        assert_eq!(out.profiles_checked(), 1);
    }

    #[test]
    fn budget() {
        let g = matching_pennies();
        assert!(exhaustive_search(&g, 2, 0.1, Some(0)).is_err());
        assert_eq!(
            exhaustive_search(&g, 2, 0.0, Some(3)).unwrap(),
            SearchOutcome::NotFound { profiles_checked: 3 }
        );
    }

    #[test]
    fn incremental_matches_exact_on_three_players() {
        let g = GameSpec::from_fn(vec![2, 3, 2], |p, a| {
            ((p * 7 + a[0] * 5 + a[1] * 3 + a[2] * 11) % 13) as f64 / 12.0
        })
        .unwrap();
        let k = 3;
        let start: Vec<Vec<u32>> = g.action_counts().iter().map(|&m| first_composition(m, k)).collect();
        let mut eval = IncrementalEvaluator::new(&g, start.clone(), k);
        let mut profile = start;
        loop {
            let exact = game::regrets(
                &g,
                &KUniformCounts::new(k, profile.clone()).unwrap().to_mixed(),
                VerifyMode::Exact,
            )
            .unwrap();
            assert!((eval.max_regret() - exact.max_regret).abs() < 1e-12);
            let Some(p) = advance_profile(&mut profile, g.action_counts(), k) else {
                break;
            };
            for (q, counts) in profile.iter().enumerate().skip(p) {
                eval.set_counts(q, counts);
            }
        }
    }

    #[test]
    fn parallel_equals_serial() {
        let g = GameSpec::from_fn(vec![3, 3], |p, a| ((p + 2 * a[0] + a[1]) % 5) as f64 / 4.0).unwrap();
        for eps in [0.0, 0.05, 0.2, 0.5] {
            for budget in [None, Some(7)] {
                assert_eq!(
                    exhaustive_search(&g, 4, eps, budget).unwrap(),
                    exhaustive_search_parallel(&g, 4, eps, budget).unwrap()
                );
            }
        }
    }
}
