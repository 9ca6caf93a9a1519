//! Sampling k actions per player from an exact equilibrium.

use uniform_eq::bounds::k_theorem1;
use uniform_eq::generators::{generate, Family, FamilyParams};
use uniform_eq::sampling::{sample_from_mixed, sampled_equilibrium_rate};
use uniform_eq::{regrets, VerifyMode};

fn main() -> uniform_eq::Result<()> {
    let g = generate(
        Family::SmallProbability,
        FamilyParams {
            n: 2,
            m: 8,
            c: 2.0,
            seed: 3,
        },
    )?;
    let x = g.known_equilibrium.as_ref().unwrap();

    let s = sample_from_mixed(x, 30, 1)?;
    let r = regrets(&g.game, &s.to_mixed(g.game.action_counts()), VerifyMode::Exact)?;
    println!("k = 30 sample: max regret {:.4}", r.max_regret);

    let k = k_theorem1(2, 8, 0.7)? as usize;
    let rate = sampled_equilibrium_rate(&g.game, x, k, 0.7, 200, 9)?;
    println!(
        "k = {k}: {}/{} samples are 0.7-equilibria, worst regret {:.4}",
        rate.equilibria, rate.draws, rate.worst_regret
    );
    Ok(())
}
