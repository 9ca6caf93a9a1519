//! k-uniform random sampling: draw uniform profiles until one verifies.

use uniform_eq::generators::{generate, Family, FamilyParams};
use uniform_eq::sampling::{urs, UrsResult};
use uniform_eq::VerifyMode;

fn main() -> uniform_eq::Result<()> {
    let game = generate(
        Family::GeneralizedRps,
        FamilyParams {
            m: 3,
            ..Default::default()
        },
    )?
    .game;
    for seed in 0..5 {
        let out = urs(&game, 12, 0.25, 100_000, seed, VerifyMode::Exact)?;
        match out.result {
            UrsResult::Found { profile, report } => println!(
                "seed {seed}: {} draws, counts {:?}, max regret {:.3}",
                out.iterations,
                profile.to_counts(game.action_counts()).counts(),
                report.max_regret
            ),
            UrsResult::Exhausted => println!("seed {seed}: exhausted"),
        }
    }
    Ok(())
}
