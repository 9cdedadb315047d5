//! Chernoff dominance at desk scale: the envelope bound `exp(-theta*(u))`
//! against the exact binomial tail, uniformly over the summand count.
//!
//! Run: `cargo run --release -p bphi --example exact_vs_bound`

use bphi::oracle::{exact_log_tail, sup_tail_over_n, ExactTailQuery};
use bphi::sum_tails::{tail_bounds, NormingFunction, SumModel};

fn main() {
    let w = NormingFunction::power_law(0.75).unwrap();
    let model = SumModel::rademacher(w.clone());

    println!(
        "{:>5}  {:>14}  {:>16}  {:>10}",
        "u", "bound", "sup_n exact tail", "argmax n"
    );
    for &u in &[1.05, 1.2, 1.5, 2.0] {
        let report = tail_bounds(&model, u).unwrap();
        let (sup_exact, n_star) = sup_tail_over_n(&w, 0.5, u, 1_000_000).unwrap();
        println!(
            "{u:>5}  {:>14.6e}  {:>16.6e}  {:>10}",
            report.upper_tail_probability, sup_exact, n_star
        );
        assert!(
            report.upper_tail_probability >= sup_exact,
            "dominance must hold"
        );
    }
    println!("(the exact supremum is a lower witness: only homogeneous populations are scanned)");

    // Deep in the tail the exact probability underflows f64 but its log is
    // a perfectly good number, still dominated by the Chernoff exponent.
    println!();
    println!(
        "{:>8}  {:>16}  {:>16}",
        "n", "ln exact tail", "ln bound (u=2)"
    );
    let log_bound = tail_bounds(&model, 2.0).unwrap().upper_log_tail;
    for &n in &[100u64, 10_000, 1_000_000] {
        let t = 2.0 * (n as f64).powf(0.75);
        let lt = exact_log_tail(&ExactTailQuery::new(n, 0.5, t).unwrap()).unwrap();
        println!("{n:>8}  {lt:>16.4}  {log_bound:>16.4}");
        assert!(log_bound >= lt);
    }
}
