//! Shared oracles and fixtures for the integration tests.
#![allow(dead_code)]

use rand::Rng;
use uniform_eq::game::PureProfileIter;
use uniform_eq::{rng, GameSpec, MixedProfile};

/// Regrets by enumerating every pure profile and every deviation.
pub fn brute_force_regrets(game: &GameSpec, x: &MixedProfile) -> Vec<f64> {
    let counts = game.action_counts();
    let n = counts.len();
    (0..n)
        .map(|i| {
            let mut value = 0.0;
            let mut dev = vec![0.0; counts[i]];
            for a in PureProfileIter::new(counts) {
                let others: f64 = (0..n).filter(|&j| j != i).map(|j| x.strategy(j)[a[j]]).product();
                let u = game.payoffs(i)[game.flat_index(&a)];
                value += others * x.strategy(i)[a[i]] * u;
                dev[a[i]] += others * u;
            }
            dev.iter().copied().fold(f64::NEG_INFINITY, f64::max) - value
        })
        .collect()
}

pub fn random_game(action_counts: &[usize], seed: u64) -> GameSpec {
    let mut r = rng::stream(seed, 7);
    let size: usize = action_counts.iter().product();
    let payoffs = action_counts
        .iter()
        .map(|_| (0..size).map(|_| r.gen::<f64>()).collect())
        .collect();
    GameSpec::new(action_counts.to_vec(), payoffs).unwrap()
}

/// Normalized cubes of uniforms, with a chance of exact zeros.
pub fn random_distribution<R: Rng>(m: usize, r: &mut R) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..m)
            .map(|_| if r.gen_bool(0.2) { 0.0 } else { r.gen::<f64>().powi(3) })
            .collect();
        let total: f64 = w.iter().sum();
        if total > 0.0 {
            return w.iter().map(|v| v / total).collect();
        }
    }
}

pub fn random_profile(action_counts: &[usize], seed: u64) -> MixedProfile {
    let mut r = rng::stream(seed, 8);
    MixedProfile::new(action_counts.iter().map(|&m| random_distribution(m, &mut r)).collect()).unwrap()
}
