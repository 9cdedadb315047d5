//! Exponential-moment norms and tail bounds for centered binary random
//! variables and their non-standardly normed sums.
//!
//! A centered variable `xi` with `E exp(lambda xi) <= exp(phi(lambda tau))`
//! for an even convex generator `phi` carries the norm `tau` (the least such
//! constant). This crate computes those norms for two-point laws, the
//! Young-Fenchel conjugates that turn them into Chernoff tail bounds, and the
//! bilateral envelope machinery for sums `S(n) = w(n)^{-1} sum zeta(i)` of
//! independent centered indicators under a norming function `w` growing
//! strictly between `sqrt(n)` and `n`. Exact binomial oracles and seeded
//! Monte Carlo validate every bound.
//!
//! Modules:
//!
//! - [`specials`] — stable `acosh`, `ln cosh`, log-sum-exp, envelope constants.
//! - [`fenchel`] — numeric and closed-form Young-Fenchel conjugation.
//! - [`phi_spaces`] — generic generator-norm fitting and the subgaussian norm.
//! - [`binary`] — everything specific to centered indicators: the exact
//!   log-mgf, the Rademacher-generator norm `g(r)`, the subgaussian norm
//!   `Q(p)`, and the mgf envelope audit.
//! - [`sum_tails`] — norming functions with their growth conditions, the mgf
//!   envelope `theta`, the rate function `v_w`, and bilateral tail reports.
//! - [`oracle`] — exact binomial tails, deterministic Monte Carlo, and the
//!   bounded-variable envelope check.
//! - [`cli`] — the batch command-line surface (`norm`, `gfun`, `fenchel`,
//!   `bound`, `simulate`, `audit`, `verify`).
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --release -p bphi --example binary_norms
//! cargo run --release -p bphi --example fit_norm
//! cargo run --release -p bphi --example conjugate
//! cargo run --release -p bphi --example sum_bounds
//! cargo run --release -p bphi --example exact_vs_bound
//! cargo run --release -p bphi --example simulate
//! cargo run --release -p bphi --example envelope_audit
//! ```

// `!(x > 0.0)` is used deliberately throughout: unlike `x <= 0.0`, the
// negated form also rejects NaN at domain boundaries.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod binary;
pub mod cli;
pub mod fenchel;
pub mod oracle;
pub mod phi_spaces;
pub mod specials;
pub mod sum_tails;

pub(crate) mod search;

pub use binary::{BinaryVariable, GNormResult};
pub use fenchel::ConjugableFunction;
pub use oracle::{ExactTailQuery, FiniteLaw, SimulationResult};
pub use phi_spaces::{BphiNorm, LambdaGrid, MgfOracle, PhiFunction};
pub use sum_tails::{NormingFunction, SumModel, TailBoundReport};
