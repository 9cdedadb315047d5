//! Fitting a generator norm from nothing but a log-mgf oracle: the smallest
//! `tau` with `ln E e^{lambda xi} <= phi(lambda tau)` for every `lambda`.
//!
//! Run: `cargo run --release -p bphi --example fit_norm`

use bphi::binary::{g_norm, BinaryVariable};
use bphi::phi_spaces::{fit_bphi_norm, subgaussian_norm, LambdaGrid, MgfOracle, PhiFunction};

fn main() {
    let grid = LambdaGrid::default();
    let phi_r = PhiFunction::rademacher();

    // A symmetric two-point variable at +/- 1/2 has norm exactly 1 against
    // its own generator.
    let rademacher = BinaryVariable::new(0.5).unwrap();
    let norm = fit_bphi_norm(&rademacher.mgf_oracle(), &phi_r, &grid).unwrap();
    println!(
        "symmetric +/-1/2 vs its own generator: tau = {:.9}",
        norm.tau
    );

    // Asymmetric indicators cost more: the fitted norm reproduces g(p).
    for &p in &[0.3, 0.15, 0.05] {
        let eta = BinaryVariable::new(p).unwrap();
        let fitted = fit_bphi_norm(&eta.mgf_oracle(), &phi_r, &grid).unwrap();
        println!(
            "p = {p:<5}: fitted tau = {:.8}   g(p) = {:.8}   sup attained near lambda = {:.3e}",
            fitted.tau,
            g_norm(p).value,
            fitted.achieved_at
        );
    }

    // The norm scales linearly: the oracle of 2.5 xi fits to 2.5 tau.
    let scaled = fit_bphi_norm(&rademacher.mgf_oracle().scaled(2.5), &phi_r, &grid).unwrap();
    println!(
        "scaling: 2.5 * (+/-1/2 variable) fits to tau = {:.9}",
        scaled.tau
    );

    // The subgaussian norm is the quadratic-generator special case; for a
    // Gaussian it is sigma / sqrt(2).
    let gauss = subgaussian_norm(&MgfOracle::gaussian(1.0), &grid).unwrap();
    println!(
        "subgaussian norm of a unit Gaussian: {:.9} (1/sqrt(2) = {:.9})",
        gauss,
        1.0 / 2f64.sqrt()
    );

    // Not every centered variable is subgaussian: a quartic log-mgf keeps
    // the defining ratio growing and the fit reports it.
    let quartic = MgfOracle::new(|lam: f64| lam.powi(4), f64::NEG_INFINITY, f64::INFINITY).unwrap();
    match subgaussian_norm(&quartic, &grid) {
        Err(e) => println!("quartic log-mgf: {e}"),
        Ok(v) => println!("quartic log-mgf unexpectedly fit to {v}"),
    }
}
