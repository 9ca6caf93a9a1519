//! Exact equilibria of 2-player games by support enumeration.

use uniform_eq::generators::{
    generalized_rps, generate, matching_pennies, solve_two_player, Family, FamilyParams, RationalProfile,
};

fn show(x: &RationalProfile) -> String {
    x.iter()
        .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn main() -> uniform_eq::Result<()> {
    let games = [
        ("matching pennies", matching_pennies()),
        ("rps", generalized_rps(3)),
        (
            "random 3x3",
            generate(
                Family::Random,
                FamilyParams {
                    n: 2,
                    m: 3,
                    c: 2.0,
                    seed: 8,
                },
            )?
            .game,
        ),
    ];
    for (label, game) in games {
        for x in solve_two_player(&game)? {
            println!("{label}: {}", show(&x));
        }
    }
    Ok(())
}
