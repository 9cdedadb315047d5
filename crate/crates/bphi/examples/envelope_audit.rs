//! Two envelope stories. First, the claim `sup_r beta_r(lambda) =
//! cosh(lambda/2)` for centered indicators: direct evaluation confirms it
//! exactly on the quadrant `lambda (2r - 1) >= 0` and refutes it off the
//! quadrant, which the audit records rather than hides. Second, the general
//! bounded-variable envelope: any mean-zero law on [-1/2, 1/2] satisfies
//! `E e^{lambda X} <= cosh(lambda/2)`, with equality only at the symmetric
//! two-point law.
//!
//! Run: `cargo run --release -p bphi --example envelope_audit`

use bphi::binary::audit_mgf_envelope;
use bphi::oracle::{bounded_variable_envelope_check, FiniteLaw};

fn main() {
    let r_grid: Vec<f64> = (1..=19).map(|i| i as f64 / 20.0).collect();
    let lambda_grid: Vec<f64> = (-4..=4).map(|i| 5.0 * i as f64).collect();
    let audit = audit_mgf_envelope(&r_grid, &lambda_grid).unwrap();

    println!(
        "{:>8}  {:>14}  {:>6}  {:>14}",
        "lambda", "sup_r ln beta", "arg r", "ln cosh(l/2)"
    );
    for row in &audit.rows {
        println!(
            "{:>8}  {:>14.6}  {:>6.2}  {:>14.6}",
            row.lambda, row.sup_log_beta, row.arg_r, row.log_cosh_half
        );
    }

    println!();
    println!(
        "{} grid points exceed cosh(lambda/2); quadrant-restricted claim holds: {}",
        audit.flags.len(),
        audit.quadrant_holds()
    );
    if let Some(flag) = audit.flag_at(0.1, 20.0) {
        println!(
            "largest-style counterexample: beta_0.1(20) = {:.4e} > cosh(10) = {:.4e}",
            flag.log_beta.exp(),
            flag.log_cosh_half.exp()
        );
    }

    // The bounded-variable envelope, with its equality case.
    println!();
    let grid: Vec<f64> = (-60..=60).map(|i| 0.5 * i as f64).collect();
    let laws: Vec<(&str, FiniteLaw)> = vec![
        ("symmetric +/-1/2", FiniteLaw::rademacher_half()),
        (
            "three-point (1/4, 1/2, 1/4)",
            FiniteLaw::new(vec![(-0.5, 0.25), (0.0, 0.5), (0.5, 0.25)]).unwrap(),
        ),
        (
            "asymmetric two-point",
            FiniteLaw::new(vec![(0.4, 1.0 / 3.0), (-0.2, 2.0 / 3.0)]).unwrap(),
        ),
        ("degenerate at 0", FiniteLaw::new(vec![(0.0, 1.0)]).unwrap()),
    ];
    println!("max over lambda of ln E e^(lambda X) - ln cosh(lambda/2):");
    for (name, law) in &laws {
        println!(
            "  {name:<28} {:+.3e}",
            bounded_variable_envelope_check(law, &grid)
        );
    }
    println!("(zero only for the symmetric two-point law; strictly negative otherwise)");
}
