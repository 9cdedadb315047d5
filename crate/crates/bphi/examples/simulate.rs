//! Seeded Monte Carlo for heterogeneous indicator sums, validated against
//! the exact binomial oracle where one exists. Counter-based randomness
//! makes every run bit-identical for a fixed seed, whatever the worker
//! count.
//!
//! Run: `cargo run --release -p bphi --example simulate`

use bphi::oracle::{exact_tail, simulate_tail, simulate_tail_with_workers, ExactTailQuery};

fn main() {
    // Homogeneous case: four fair indicators, threshold 1 on the raw sum;
    // the exact tail is P(K = 4) = 1/16.
    let w_value = 4f64.powf(0.75);
    let u = 1.0 / w_value;
    let exact = exact_tail(&ExactTailQuery::new(4, 0.5, 1.0).unwrap()).unwrap();
    let sim = simulate_tail(&[0.5; 4], w_value, u, 1_000_000, 2024).unwrap();
    println!("exact tail      = {exact:.8}");
    println!(
        "estimate        = {:.8}  ({} hits / {} samples, seed {})",
        sim.estimate, sim.hits, sim.samples, sim.seed
    );
    println!("99% interval    = [{:.8}, {:.8}]", sim.ci_lo, sim.ci_hi);
    println!(
        "contains exact  = {}",
        sim.ci_lo <= exact && exact <= sim.ci_hi
    );

    // Determinism: same seed, different sharding, identical bits.
    let one = simulate_tail_with_workers(&[0.5; 4], w_value, u, 1_000_000, 2024, 1).unwrap();
    let eight = simulate_tail_with_workers(&[0.5; 4], w_value, u, 1_000_000, 2024, 8).unwrap();
    println!();
    println!(
        "1 worker vs 8 workers bit-identical: {}",
        one == eight && one == sim
    );

    // Heterogeneous case: no exact oracle, but the support bound still
    // pins impossible thresholds to zero.
    let ps = [0.9, 0.6, 0.3, 0.1, 0.05];
    let reachable = simulate_tail(&ps, 2.0, 0.4, 200_000, 7).unwrap();
    println!();
    println!("heterogeneous p = {ps:?}");
    println!(
        "P(S > 0.4)  ~ {:.6}  CI [{:.6}, {:.6}]",
        reachable.estimate, reachable.ci_lo, reachable.ci_hi
    );
    let max_sum: f64 = ps.iter().map(|p| 1.0 - p).sum();
    let impossible = simulate_tail(&ps, 2.0, max_sum / 2.0 + 0.01, 200_000, 7).unwrap();
    println!(
        "P(S > support bound) = {} exactly ({} hits)",
        impossible.estimate, impossible.hits
    );
}
