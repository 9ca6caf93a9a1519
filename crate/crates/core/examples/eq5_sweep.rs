//! Forbidden-event frequencies against their closed-form tail bound.

use std::io;

use uniform_eq::experiments::{run_eq5_sweep, write_csv};
use uniform_eq::generators::matching_pennies;
use uniform_eq::MixedProfile;

fn main() -> uniform_eq::Result<()> {
    let game = matching_pennies().with_known_equilibrium(MixedProfile::uniform(&[2, 2]))?;
    // at ε = 0.3 the bound stops being vacuous within the range
    let records = run_eq5_sweep(&game, 0.3, &[20, 200, 400, 800], 20_000, 5, Some(&[(0, 0)]))?;
    write_csv(&records, io::stdout().lock())
}
