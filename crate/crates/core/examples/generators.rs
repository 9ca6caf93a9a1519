//! Game families with known equilibria and their exact regret.

use uniform_eq::generators::{generate, Family, FamilyParams};

fn main() -> uniform_eq::Result<()> {
    let cases = [
        (Family::MatchingPennies, FamilyParams::default()),
        (
            Family::GeneralizedRps,
            FamilyParams {
                m: 5,
                ..Default::default()
            },
        ),
        (
            Family::CircularMatchingPennies,
            FamilyParams {
                n: 3,
                m: 2,
                ..Default::default()
            },
        ),
        (
            Family::SmallProbability,
            FamilyParams {
                n: 3,
                m: 8,
                c: 2.0,
                seed: 1,
            },
        ),
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
                seed: 4,
            },
        ),
        (
            Family::Random,
            FamilyParams {
                n: 2,
                m: 4,
                c: 2.0,
                seed: 2,
            },
        ),
    ];
    for (family, params) in cases {
        let g = generate(family, params)?;
        let regret = g
            .exact_max_regret()
            .map(|r| r.to_string())
            .unwrap_or_else(|| "-".into());
        println!(
            "{family}: actions {:?}, exact regret at known equilibrium {regret}",
            g.game.action_counts()
        );
    }
    Ok(())
}
