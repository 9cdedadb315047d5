//! Young-Fenchel conjugation: `f*(u) = sup_x (x u - f(x))`, numerically and
//! in closed form, plus the double-conjugation round trip `f** = f`.
//!
//! Run: `cargo run --release -p bphi --example conjugate`

use bphi::fenchel::{conjugate, conjugate_power_law, fenchel_moreau_check, ConjugableFunction};
use bphi::specials::log_cosh;

fn main() {
    // The square conjugates to u^2/4.
    let square =
        ConjugableFunction::certified(|x| x * x, f64::NEG_INFINITY, f64::INFINITY).unwrap();
    for &u in &[0.5, 2.0, -3.0] {
        println!(
            "(x^2)*({u:>4}) = {:<12.9} analytic u^2/4 = {:.9}",
            conjugate(&square, u).unwrap(),
            u * u / 4.0
        );
    }

    // A power law on [1, inf): numeric search against the closed form.
    let pow43 =
        ConjugableFunction::certified(|x: f64| x.powf(4.0 / 3.0), 1.0, f64::INFINITY).unwrap();
    println!();
    for &u in &[2.0, 4.0, 10.0] {
        let numeric = conjugate(&pow43, u).unwrap();
        let closed = conjugate_power_law(4.0 / 3.0, 1.0, u).unwrap();
        println!("(x^(4/3))*({u:>4}) = {numeric:<14.9} closed form (27/256) u^4 = {closed:.9}");
    }

    // Bounded slope means the conjugate escapes to +inf past the slope range.
    let absf =
        ConjugableFunction::certified(|x: f64| x.abs(), f64::NEG_INFINITY, f64::INFINITY).unwrap();
    println!();
    println!("(|x|)*(0.5)  = {:?}", conjugate(&absf, 0.5).unwrap());
    println!(
        "(|x|)*(1.01) = {:?}  (slope range exhausted)",
        conjugate(&absf, 1.01).unwrap()
    );

    // Fenchel-Moreau: conjugating twice returns the closed convex function.
    println!();
    let grid_sq: Vec<f64> = (0..=40).map(|i| -10.0 + 0.5 * i as f64).collect();
    let grid_lc: Vec<f64> = (0..=40).map(|i| -20.0 + i as f64).collect();
    let lc = ConjugableFunction::certified(|x| log_cosh(0.5 * x), f64::NEG_INFINITY, f64::INFINITY)
        .unwrap();
    println!("round trip max |f** - f|:");
    println!(
        "  x^2            -> {:.3e}",
        fenchel_moreau_check(&square, &grid_sq).unwrap()
    );
    println!(
        "  ln cosh(x/2)   -> {:.3e}",
        fenchel_moreau_check(&lc, &grid_lc).unwrap()
    );
    let grid_pow: Vec<f64> = (0..=30).map(|i| 1.0 + i as f64).collect();
    println!(
        "  x^(4/3) on [1,inf) -> {:.3e}",
        fenchel_moreau_check(&pow43, &grid_pow).unwrap()
    );

    // Conjugation refuses anything not certified convex.
    let wavy = ConjugableFunction::certified(|x: f64| x.sin(), -10.0, 10.0);
    println!();
    println!("certifying sin(x): {:?}", wavy.err().unwrap());
}
