//! The closed-form thresholds, tail bound and sample bound.

use uniform_eq::bounds::{eq5_bound, expected_samples_bound, k_theorem1, k_theorem2};

fn main() -> uniform_eq::Result<()> {
    for (n, m, eps) in [(2, 2, 0.5), (10, 10, 0.5), (3, 2, 0.7)] {
        println!("k1({n}, {m}, {eps}) = {}", k_theorem1(n, m, eps)?);
    }

    let t = k_theorem2(2, 2, 1.0)?;
    println!(
        "k2(2, 2, 1) = {} (log term {}, addressable {})",
        t.k.decimal.unwrap(),
        t.log_term,
        t.addressable
    );
    let t = k_theorem2(2, 2, 0.1)?;
    println!("k2(2, 2, 0.1) ≈ 2^{:.1}", t.k.log2);

    for k in [40, 100, 160] {
        println!("tail bound at k = {k}, ε = 0.7: {:.6}", eq5_bound(k, 0.7)?);
    }

    let b = expected_samples_bound(2, 16, 10, 7.741446071165521)?;
    println!("expected samples (m = 16, k = 10): {}", b.decimal.unwrap());
    Ok(())
}
