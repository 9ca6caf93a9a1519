//! Random-sampling cost at full and reduced equilibrium entropy.

use std::io;

use uniform_eq::experiments::{run_entropy_samples, write_json, UrsStudy};
use uniform_eq::generators::{dominant_action_game, generate, Family, FamilyParams};
use uniform_eq::VerifyMode;

fn main() -> uniform_eq::Result<()> {
    let games = vec![
        (
            "matching_pennies".to_string(),
            generate(Family::MatchingPennies, FamilyParams::default())?.game,
        ),
        ("dominant_action".to_string(), dominant_action_game(4)),
    ];
    let study = UrsStudy {
        k: 160,
        epsilon: 0.7,
        runs: 50,
        max_iterations: 100_000,
        seed: 0,
        verify_mode: VerifyMode::Exact,
    };
    write_json(&run_entropy_samples(&games, study)?, io::stdout().lock())
}
