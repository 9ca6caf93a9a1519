//! Game files: one UTF-8 JSON document.
//!
//! ```json
//! {
//!   "version": 1,
//!   "name": "matching_pennies",
//!   "action_counts": [2, 2],
//!   "payoffs": [[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 1.0, 0.0]],
//!   "known_equilibrium": [[0.5, 0.5], [0.5, 0.5]]
//! }
//! ```
//!
//! `payoffs[i]` is player i's flat tensor, row-major over `(a_1, …, a_n)`
//! (player 1 slowest). `name` and `known_equilibrium` are optional. Numbers
//! are written with 17 significant digits, which round-trips every f64.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::game::{GameSpec, MixedProfile};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    version: u32,
    #[serde(default)]
    name: Option<String>,
    action_counts: Vec<usize>,
    payoffs: Vec<Vec<f64>>,
    #[serde(default)]
    known_equilibrium: Option<Vec<Vec<f64>>>,
}

fn number(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").unwrap();
}

fn rows(out: &mut String, rows: &[Vec<f64>]) {
    out.push('[');
    for (r, row) in rows.iter().enumerate() {
        if r > 0 {
            out.push_str(",\n    ");
        }
        out.push('[');
        for (i, &v) in row.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            number(out, v);
        }
        out.push(']');
    }
    out.push(']');
}

/// Renders `game` in the file format.
pub fn game_to_json(game: &GameSpec) -> String {
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"version\": {FORMAT_VERSION},").unwrap();
    if let Some(name) = game.name() {
        writeln!(out, "  \"name\": {},", serde_json::to_string(name).unwrap()).unwrap();
    }
    writeln!(
        out,
        "  \"action_counts\": {},",
        serde_json::to_string(game.action_counts()).unwrap()
    )
    .unwrap();
    out.push_str("  \"payoffs\": ");
    let payoffs: Vec<Vec<f64>> = (0..game.num_players()).map(|i| game.payoffs(i).to_vec()).collect();
    rows(&mut out, &payoffs);
    if let Some(x) = game.known_equilibrium() {
        out.push_str(",\n  \"known_equilibrium\": ");
        rows(&mut out, x.strategies());
    }
    out.push_str("\n}\n");
    out
}

/// Parses and validates a game document.
pub fn game_from_json(text: &str) -> Result<GameSpec> {
    let file: GameFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if file.version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported version {}, expected {FORMAT_VERSION}",
            file.version
        )));
    }
    let mut game = GameSpec::new(file.action_counts, file.payoffs)?;
    if let Some(name) = file.name {
        game = game.with_name(name);
    }
    if let Some(x) = file.known_equilibrium {
        game = game.with_known_equilibrium(MixedProfile::new(x)?)?;
    }
    Ok(game)
}

pub fn save_game(game: &GameSpec, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, game_to_json(game))?;
    Ok(())
}

pub fn load_game(path: impl AsRef<Path>) -> Result<GameSpec> {
    game_from_json(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, Family, FamilyParams};

    #[test]
    fn roundtrip_matching_pennies() {
        let g = generate(Family::MatchingPennies, FamilyParams::default()).unwrap().game;
        let back = game_from_json(&game_to_json(&g)).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let g = generate(
            Family::Planted,
            FamilyParams {
                n: 3,
                m: 3,
                c: 2.0,
                seed: 5,
            },
        )
        .unwrap()
        .game;
        let back = game_from_json(&game_to_json(&g)).unwrap();
        for i in 0..3 {
            let a: Vec<u64> = g.payoffs(i).iter().map(|v| v.to_bits()).collect();
            let b: Vec<u64> = back.payoffs(i).iter().map(|v| v.to_bits()).collect();
            assert_eq!(a, b);
        }
        assert_eq!(back.known_equilibrium(), g.known_equilibrium());
    }

    #[test]
    fn out_of_range_payoff_names_player_and_index() {
        let text = r#"{"version": 1, "action_counts": [2, 2], "payoffs": [[0, 0, 0, 0], [0, 1.5, 0, 0]]}"#;
        let err = game_from_json(text).unwrap_err();
        assert!(matches!(
            err,
            Error::PayoffOutOfRange {
                player: 1,
                index: 1,
                ..
            }
        ));
        assert!(err.to_string().contains("player 1"));
        assert!(err.to_string().contains("index 1"));
    }

    #[test]
    fn wrong_tensor_length() {
        let text = r#"{"version": 1, "action_counts": [2, 2], "payoffs": [[0, 0, 0], [0, 0, 0, 0]]}"#;
        let err = game_from_json(text).unwrap_err();
        assert!(matches!(
            err,
            Error::TensorLength {
                player: 0,
                expected: 4,
                actual: 3
            }
        ));
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(game_from_json("{"), Err(Error::Format(_))));
        assert!(matches!(
            game_from_json(r#"{"version": 2, "action_counts": [1], "payoffs": [[0]]}"#),
            Err(Error::Format(_))
        ));
        assert!(matches!(
            game_from_json(r#"{"version": 1, "action_counts": [1], "payoffs": [["x"]]}"#),
            Err(Error::Format(_))
        ));
    }
}
