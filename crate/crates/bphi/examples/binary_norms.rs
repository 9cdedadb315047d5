//! The two norms of a centered indicator across its parameter range:
//! `g(r)` (against the generator `ln cosh(lambda/2)`) and the subgaussian
//! norm `Q(r)`, next to the analytic limit witnesses of `g`.
//!
//! Run: `cargo run --release -p bphi --example binary_norms`

use bphi::binary::{g_norm, q_norm};

fn main() {
    println!(
        "{:>5}  {:>10}  {:>12}  {:>12}  {:>10}  {:>10}",
        "r", "g(r)", "2sqrt(r(1-r))", "2max(r,1-r)", "Q(r)", "arg"
    );
    for i in 1..=19 {
        let r = i as f64 / 20.0;
        let g = g_norm(r);
        let arg = if g.arg_lambda == 0.0 {
            "l->0".to_string()
        } else if g.arg_lambda.is_infinite() {
            "l->inf".to_string()
        } else {
            format!("{:.3}", g.arg_lambda)
        };
        println!(
            "{r:>5.2}  {:>10.6}  {:>12.6}  {:>12.6}  {:>10.6}  {arg:>10}",
            g.value,
            g.lower_bound_zero_limit,
            g.lower_bound_inf_limit,
            q_norm(r)
        );
    }

    println!();
    println!("endpoint behaviour: both norms are continuous on (0, 1) but head opposite ways at the ends:");
    for &r in &[1e-2, 1e-4, 1e-6] {
        println!(
            "  r = {r:>8.0e}:  g = {:.6} (toward 2),  Q = {:.6} (toward 0)",
            g_norm(r).value,
            q_norm(r)
        );
    }
    println!(
        "  Q(r) sqrt(|ln r|) -> 1/2:  at r = 1e-12 the product is {:.6}",
        q_norm(1e-12) * (1e-12f64).ln().abs().sqrt()
    );
}
