//! Entropy of equilibria and the counting lemma on random distributions.

use rand::Rng;
use uniform_eq::bounds::{distribution_entropy, greedy_premise_set, lemma3_check, shannon_entropy};
use uniform_eq::generators::{generate, Family, FamilyParams};
use uniform_eq::rng;

fn main() -> uniform_eq::Result<()> {
    for m in [16, 64, 256, 1024] {
        let g = generate(
            Family::PaperExample,
            FamilyParams {
                m,
                ..Default::default()
            },
        )?;
        let h = shannon_entropy(g.known_equilibrium.as_ref().unwrap());
        let log_m = (m as f64).log2();
        println!(
            "m = {m}: deficit {:.5}, cap {:.5}",
            2.0 * log_m - h,
            log_m / ((m as f64).sqrt() + 1.0)
        );
    }

    let mut r = rng::stream(0, 0);
    for size in [4, 8, 16, 32] {
        let w: Vec<f64> = (0..size).map(|_| r.gen::<f64>().powi(3)).collect();
        let total: f64 = w.iter().sum();
        let y: Vec<f64> = w.iter().map(|v| v / total).collect();
        let c = lemma3_check(&y, &greedy_premise_set(&y))?;
        println!(
            "|M| = {size}: H = {:.3}, |S| = {} ≥ {:.2}: {}",
            distribution_entropy(&y),
            c.subset_size,
            c.size_threshold,
            c.conclusion_holds
        );
    }
    Ok(())
}
