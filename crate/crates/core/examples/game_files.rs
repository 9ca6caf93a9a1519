//! Writing and reading game files.

use uniform_eq::generators::{generate, Family, FamilyParams};
use uniform_eq::io::{game_to_json, load_game, save_game};

fn main() -> uniform_eq::Result<()> {
    let game = generate(
        Family::Planted,
        FamilyParams {
            n: 2,
            m: 3,
            c: 2.0,
            seed: 1,
        },
    )?
    .game;
    print!("{}", game_to_json(&game));

    let path = std::env::temp_dir().join("uniform_eq_planted.json");
    save_game(&game, &path)?;
    println!("round trip equal: {}", load_game(&path)? == game);
    std::fs::remove_file(path)?;
    Ok(())
}
