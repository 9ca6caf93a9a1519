//! Frozen reference values and statistical checks against independent oracles.

mod common;

use num_bigint::BigUint;
use uniform_eq::bounds::{eq5_bound, expected_samples_bound, k_theorem1, k_theorem2, shannon_entropy};
use uniform_eq::experiments::{run_entropy_samples, UrsStudy};
use uniform_eq::game::default_mc_trials;
use uniform_eq::generators::{dominant_action_game, generate, matching_pennies, Family, FamilyParams};
use uniform_eq::sampling::{estimate_gap_probability, sampled_equilibrium_rate, urs, UrsResult};
use uniform_eq::{regrets, GameSpec, MixedProfile, VerifyMode};

use common::{random_game, random_profile};

fn close(a: f64, b: f64, rel: f64) -> bool {
    ((a - b) / b).abs() <= rel
}

#[test]
fn sampling_thresholds() {
    for (n, m, eps, k) in [
        (2, 2, 0.5, 134),
        (10, 10, 0.5, 237),
        (2, 2, 1.0, 28),
        (2, 8, 0.7, 86),
        (3, 2, 0.7, 70),
        (2, 2, 0.7, 63),
    ] {
        assert_eq!(k_theorem1(n, m, eps).unwrap(), k, "n={n} m={m} ε={eps}");
    }
}

#[test]
fn urs_thresholds() {
    let t = k_theorem2(2, 2, 1.0).unwrap();
    assert_eq!(t.log_term, 55);
    assert_eq!(t.k.exact, Some(BigUint::from(8_886_111u32)));
    assert!(t.addressable);

    let t = k_theorem2(2, 2, 0.8).unwrap();
    assert_eq!(t.log_term, 91);
    assert_eq!(t.k.exact, Some(BigUint::from(72_004_899_338u64)));
    assert!(!t.addressable);

    // far beyond any exact rendering, still reported in log space
    let t = k_theorem2(2, 2, 0.01).unwrap();
    assert!(t.k.exact.is_none());
    assert!(close(t.k.log2, 160_000.0 * std::f64::consts::LOG2_E, 1e-12));
}

#[test]
fn tail_bounds() {
    assert!((eq5_bound(160, 0.7).unwrap() - 6.33733e-4).abs() < 1e-9);
    assert!((eq5_bound(40, 0.7).unwrap() - 0.986212).abs() < 1e-6);
}

#[test]
fn sample_bounds() {
    let b = expected_samples_bound(2, 2, 10, 1.0).unwrap();
    assert_eq!(b.approx, 4096.0);
    let g = generate(
        Family::PaperExample,
        FamilyParams {
            m: 16,
            ..Default::default()
        },
    )
    .unwrap();
    let h = shannon_entropy(g.known_equilibrium.as_ref().unwrap());
    assert!((h - (4.0 + 3.741446071)).abs() < 1e-9);
    let b = expected_samples_bound(2, 16, 10, h).unwrap();
    assert!((b.approx - 24.0096).abs() < 1e-4);
}

#[test]
fn example_entropy_gaps() {
    let frozen = [(16, 0.25855), (64, 0.22632), (256, 0.16800), (1024, 0.11324)];
    for (m, gap) in frozen {
        let g = generate(
            Family::PaperExample,
            FamilyParams {
                m,
                ..Default::default()
            },
        )
        .unwrap();
        let h = shannon_entropy(g.known_equilibrium.as_ref().unwrap());
        assert!((2.0 * (m as f64).log2() - h - gap).abs() < 1e-5, "m={m}");
    }
}

#[test]
fn monte_carlo_trial_count() {
    assert_eq!(default_mc_trials(0.5, &[2, 2], 1e-6), 2035);
}

/// Exact success probability of one uniform draw on matching pennies at
/// k = 160, ε = 0.7, summed over the binomial action frequencies.
fn matching_pennies_success_probability(k: u64, eps: f64) -> f64 {
    let ln_choose = |a: u64| -> f64 { (1..=a).map(|t| ((k - a + t) as f64 / t as f64).ln()).sum() };
    let mut total = 0.0;
    for a in 0..=k {
        for b in 0..=k {
            let (p, q) = (a as f64 / k as f64, b as f64 / k as f64);
            let u1 = p * q + (1.0 - p) * (1.0 - q);
            let r1 = q.max(1.0 - q) - u1;
            let r2 = p.max(1.0 - p) - (1.0 - u1);
            if r1 <= eps && r2 <= eps {
                total += (ln_choose(a) + ln_choose(b) - 2.0 * k as f64 * 2f64.ln()).exp();
            }
        }
    }
    total
}

#[test]
fn matching_pennies_urs_cost_matches_binomial_oracle() {
    let p = matching_pennies_success_probability(160, 0.7);
    assert!(1.0 / p <= 4.0);
    let game = generate(Family::MatchingPennies, FamilyParams::default()).unwrap().game;
    let study = UrsStudy {
        k: 160,
        epsilon: 0.7,
        runs: 100,
        max_iterations: 1000,
        seed: 0,
        verify_mode: VerifyMode::Exact,
    };
    let rec = &run_entropy_samples(&[("mp".into(), game)], study).unwrap()[0];
    assert!((rec.mean_iterations - 1.0 / p).abs() < 0.05);
    assert!(!rec.theorem_k);
}

#[test]
fn low_entropy_equilibrium_costs_more_draws() {
    // one draw succeeds with probability P(Bin(160, 1/4) ≥ 48) ≈ 0.0873
    let study = UrsStudy {
        k: 160,
        epsilon: 0.7,
        runs: 200,
        max_iterations: 10_000,
        seed: 3,
        verify_mode: VerifyMode::Exact,
    };
    let games = vec![
        (
            "mp".to_string(),
            matching_pennies()
                .with_known_equilibrium(MixedProfile::uniform(&[2, 2]))
                .unwrap(),
        ),
        ("dominant".to_string(), dominant_action_game(4)),
    ];
    let recs = run_entropy_samples(&games, study).unwrap();
    assert!(recs[1].mean_iterations > recs[0].mean_iterations);
    assert!(
        (recs[1].mean_iterations - 11.456).abs() < 2.5,
        "{}",
        recs[1].mean_iterations
    );
    assert!(recs[1].bound_log2 > recs[0].bound_log2);
}

#[test]
fn urs_draws_are_uniform() {
    // k = 1 on a game where every profile qualifies: the first draw is the result
    let game = GameSpec::constant(vec![2, 2], 0.5).unwrap();
    let mut cells = [0u64; 4];
    let draws = 100_000u64;
    for seed in 0..draws {
        let out = urs(&game, 1, 0.5, 1, seed, VerifyMode::Exact).unwrap();
        let UrsResult::Found { profile, .. } = out.result else {
            panic!("constant game")
        };
        let s = profile.samples();
        cells[s[0][0] * 2 + s[1][0]] += 1;
    }
    let expected = draws as f64 / 4.0;
    let chi2: f64 = cells.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 3 degrees of freedom, significance 1e-3
    assert!(chi2 < 16.266, "χ² = {chi2}, cells {cells:?}");
}

#[test]
fn monte_carlo_regrets_converge() {
    let game = random_game(&[2, 2], 17);
    let x = MixedProfile::new(vec![vec![0.3, 0.7], vec![0.6, 0.4]]).unwrap();
    let exact = regrets(&game, &x, VerifyMode::Exact).unwrap();
    let reps = 100;
    let mut mean = [0.0; 2];
    for rep in 0..reps {
        let mode = VerifyMode::MonteCarlo {
            trials: 100_000,
            confidence: 1e-6,
            seed: rep,
        };
        let r = regrets(&game, &x, mode).unwrap();
        for (m, v) in mean.iter_mut().zip(&r.regrets) {
            *m += v / reps as f64;
        }
    }
    for (m, e) in mean.iter().zip(&exact.regrets) {
        assert!((m - e).abs() < 0.01, "{m} vs {e}");
    }
}

#[test]
fn tail_frequencies_respect_the_bound() {
    let g = generate(
        Family::Planted,
        FamilyParams {
            n: 2,
            m: 3,
            c: 2.0,
            seed: 21,
        },
    )
    .unwrap();
    let x = g.known_equilibrium.as_ref().unwrap();
    for (i, j) in [(0, 0), (1, 2)] {
        for k in [100usize, 140, 200] {
            let e = estimate_gap_probability(&g.game, x, i, j, k, 0.7, 20_000, 5).unwrap();
            assert!(e.bound <= 1.0);
            assert!(e.within_bound(), "{e:?}");
        }
    }
}

#[test]
fn sampled_profiles_are_equilibria_at_the_threshold_on_every_family() {
    let cases = [
        (
            Family::PaperExample,
            FamilyParams {
                m: 16,
                ..Default::default()
            },
        ),
        (
            Family::Planted,
            FamilyParams {
                n: 3,
                m: 3,
                c: 2.0,
                seed: 8,
            },
        ),
        (
            Family::SmallProbability,
            FamilyParams {
                n: 3,
                m: 4,
                c: 2.0,
                seed: 1,
            },
        ),
        (
            Family::GeneralizedRps,
            FamilyParams {
                m: 5,
                ..Default::default()
            },
        ),
    ];
    for (family, params) in cases {
        let g = generate(family, params).unwrap();
        let n = g.game.num_players();
        let m = *g.game.action_counts().iter().max().unwrap();
        let k = k_theorem1(n, m, 0.7).unwrap() as usize;
        let r = sampled_equilibrium_rate(&g.game, g.known_equilibrium.as_ref().unwrap(), k, 0.7, 200, 2).unwrap();
        assert!(r.equilibria >= 198, "{family}: {r:?}");
    }
}

#[test]
fn random_profiles_regret_oracle_on_larger_games() {
    for seed in 0..20 {
        let counts = [3usize, 4, 5];
        let game = random_game(&counts, seed);
        let x = random_profile(&counts, seed);
        let report = regrets(&game, &x, VerifyMode::Exact).unwrap();
        let oracle = common::brute_force_regrets(&game, &x);
        for (a, b) in report.regrets.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
