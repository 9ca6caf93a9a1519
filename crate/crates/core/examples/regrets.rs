//! Expected payoffs and regrets of a mixed profile, exact and sampled.

use uniform_eq::generators::generalized_rps;
use uniform_eq::{is_epsilon_equilibrium, regrets, MixedProfile, VerifyMode};

fn main() -> uniform_eq::Result<()> {
    let game = generalized_rps(5);
    let uniform = MixedProfile::uniform(game.action_counts());
    let skewed = MixedProfile::new(vec![vec![0.4, 0.3, 0.1, 0.1, 0.1], vec![0.2; 5]])?;

    for (label, x) in [("uniform", &uniform), ("skewed", &skewed)] {
        let exact = regrets(&game, x, VerifyMode::Exact)?;
        let sampled = regrets(&game, x, VerifyMode::monte_carlo_default(&game, 0.1, 7))?;
        println!(
            "{label}: exact regrets {:?}, sampled {:?}",
            exact.regrets, sampled.regrets
        );
        let v = is_epsilon_equilibrium(&game, x, 0.05, VerifyMode::Exact)?;
        println!("  0.05-equilibrium: {}", v.is_equilibrium);
    }
    Ok(())
}
