//! Counting and enumerating k-uniform profiles, then searching them.

use uniform_eq::bounds::k_theorem1;
use uniform_eq::generators::{generate, Family, FamilyParams};
use uniform_eq::uniform::{count_multiset, count_ordered, exhaustive_search, exhaustive_search_parallel};
use uniform_eq::SearchOutcome;

fn main() -> uniform_eq::Result<()> {
    let game = generate(
        Family::Random,
        FamilyParams {
            seed: 11,
            ..Default::default()
        },
    )?
    .game;
    let k = k_theorem1(2, 2, 0.5)? as usize;
    println!(
        "k = {k}: {} ordered profiles, {} multiset profiles",
        count_ordered(game.action_counts(), k)?,
        count_multiset(game.action_counts(), k)?
    );

    match exhaustive_search(&game, k, 0.5, None)? {
        SearchOutcome::Found {
            profile,
            report,
            profiles_checked,
        } => {
            println!(
                "found {:?} after {profiles_checked} profiles, max regret {:.4}",
                profile.counts(),
                report.max_regret
            );
        }
        SearchOutcome::NotFound { profiles_checked } => println!("none among {profiles_checked}"),
    }

    // a tighter ε on a small k, serial and parallel agree
    let serial = exhaustive_search(&game, 8, 0.02, None)?;
    let parallel = exhaustive_search_parallel(&game, 8, 0.02, None)?;
    println!(
        "k = 8, ε = 0.02: found {}, same as parallel: {}",
        serial.is_found(),
        serial == parallel
    );
    Ok(())
}
