//! Centered indicators: the two-point variable taking `1 - p` with
//! probability `p` and `-p` with probability `1 - p`.
//!
//! The module owns their exact log-mgf `ln beta_r(lambda)` with
//! `beta_r(lambda) = r e^{lambda(1-r)} + (1-r) e^{-lambda r}`, the norm
//!
//! ```text
//! g(r) = sup_{lambda != 0} acosh(beta_r(lambda)) / (|lambda| / 2)
//! ```
//!
//! against the Rademacher generator `ln cosh(lambda/2)`, the subgaussian
//! norm `Q(p) = sqrt((1 - 2p) / (4 ln((1-p)/p)))`, and the audit of the
//! envelope claim `sup_r beta_r(lambda) = cosh(lambda/2)`, which direct
//! evaluation confirms only on the quadrant `lambda (2r - 1) >= 0`.

use crate::phi_spaces::MgfOracle;
use crate::search::golden_max;
use crate::specials::{acosh_exp, log_cosh, log_sum_exp};

/// Errors from constructing binary variables or their grids.
#[derive(Debug, Clone, PartialEq)]
pub enum BinaryError {
    /// Probability outside the open interval (0, 1).
    InvalidProbability(f64),
}

impl std::fmt::Display for BinaryError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BinaryError::InvalidProbability(p) => {
                write!(f, "probability must lie strictly inside (0, 1), got {p}")
            }
        }
    }
}

impl std::error::Error for BinaryError {}

/// A centered indicator with success probability `p` strictly inside (0, 1):
/// takes `1 - p` with probability `p` and `-p` with probability `1 - p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryVariable {
    p: f64,
}

impl BinaryVariable {
    pub fn new(p: f64) -> Result<Self, BinaryError> {
        if !(p > 0.0 && p < 1.0) {
            return Err(BinaryError::InvalidProbability(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Value taken with probability `p`.
    pub fn upper_atom(&self) -> f64 {
        1.0 - self.p
    }

    /// Value taken with probability `1 - p`.
    pub fn lower_atom(&self) -> f64 {
        -self.p
    }

    pub fn log_mgf(&self, lambda: f64) -> f64 {
        log_beta(self.p, lambda)
    }

    /// View as a generic mgf oracle for the norm-fitting machinery.
    pub fn mgf_oracle(&self) -> MgfOracle {
        let p = self.p;
        MgfOracle::new(
            move |lam| log_beta(p, lam),
            f64::NEG_INFINITY,
            f64::INFINITY,
        )
        .expect("two-point log-mgf is centered and convex")
    }
}

/// `ln beta_r(lambda) = ln(r e^{lambda(1-r)} + (1-r) e^{-lambda r})`.
///
/// Below `|lambda| = 1e-3` the cumulant series
/// `rq lambda^2/2 + rq(1-2r) lambda^3/6 + rq(1-6rq) lambda^4/24` (with
/// `q = 1 - r`) takes over: the generic log-sum-exp form carries ~1e-16
/// absolute noise, which is ruinous relative error on a value of order
/// `lambda^2`.
pub fn log_beta(r: f64, lambda: f64) -> f64 {
    assert!(r > 0.0 && r < 1.0, "log_beta needs r in (0, 1), got {r}");
    if lambda.abs() <= 1e-3 {
        let q = 1.0 - r;
        let rq = r * q;
        let l2 = lambda * lambda;
        return rq * l2 / 2.0
            + rq * (1.0 - 2.0 * r) * l2 * lambda / 6.0
            + rq * (1.0 - 6.0 * rq) * l2 * l2 / 24.0;
    }
    log_sum_exp(lambda * (1.0 - r), r, -lambda * r, 1.0 - r)
}

/// Result of the `g(r)` supremum, with lower-bound witnesses from both
/// analytic limits.
///
/// `arg_lambda` is a sentinel: `0.0` means the supremum lives in the
/// `lambda -> 0` limit, `+inf` in the `|lambda| -> inf` limit, any other
/// value is the interior grid maximizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GNormResult {
    pub value: f64,
    pub arg_lambda: f64,
    /// `2 sqrt(r (1 - r))`, the `lambda -> 0` limit of the ratio.
    pub lower_bound_zero_limit: f64,
    /// `2 max(r, 1 - r)`, the `|lambda| -> inf` limit of the ratio.
    pub lower_bound_inf_limit: f64,
}

/// The norm of the centered indicator against the Rademacher generator:
/// the supremum of `acosh(beta_r(lambda)) / (|lambda| / 2)` over
/// `lambda != 0`.
///
/// Neither limit is trusted to dominate: the value is the max of the two
/// analytic limits and an interior scan over `lambda` in `+/-[1e-4, 1e4]`
/// (log-spaced, golden-refined per sign branch).
pub fn g_norm(r: f64) -> GNormResult {
    assert!(r > 0.0 && r < 1.0, "g_norm needs r in (0, 1), got {r}");
    let zero_limit = 2.0 * (r * (1.0 - r)).sqrt();
    let inf_limit = 2.0 * r.max(1.0 - r);

    let ratio = |lam: f64| -> f64 {
        debug_assert!(lam != 0.0);
        2.0 * acosh_exp(log_beta(r, lam).max(0.0)) / lam.abs()
    };

    let (lo, hi, per_decade) = (1e-4_f64, 1e4_f64, 400u32);
    let decades = (hi / lo).log10();
    let n = (decades * per_decade as f64).ceil() as usize;
    let step = decades / n as f64;
    let mut best_interior = f64::NEG_INFINITY;
    let mut best_arg = lo;
    for sign in [1.0, -1.0] {
        let mut branch_best = f64::NEG_INFINITY;
        let mut branch_arg = lo;
        for i in 0..=n {
            let lam = lo * 10f64.powf(step * i as f64);
            let v = ratio(sign * lam);
            if v > branch_best {
                branch_best = v;
                branch_arg = lam;
            }
        }
        let ratio_step = 10f64.powf(step);
        let (arg_ref, val_ref) = golden_max(
            |m| ratio(sign * m),
            branch_arg / ratio_step,
            (branch_arg * ratio_step).min(hi),
            1e-12,
            120,
        );
        if val_ref > branch_best {
            branch_best = val_ref;
            branch_arg = arg_ref;
        }
        if branch_best > best_interior {
            best_interior = branch_best;
            best_arg = sign * branch_arg;
        }
    }

    let limit_best = zero_limit.max(inf_limit);
    let value = best_interior.max(limit_best);
    // The interior scan only claims the argmax when it clears the limits by
    // more than its own evaluation noise.
    let arg_lambda = if best_interior > limit_best * (1.0 + 1e-9) + 1e-12 {
        best_arg
    } else if inf_limit > zero_limit {
        f64::INFINITY
    } else {
        0.0
    };
    GNormResult {
        value,
        arg_lambda,
        lower_bound_zero_limit: zero_limit,
        lower_bound_inf_limit: inf_limit,
    }
}

/// The subgaussian norm of the centered indicator:
/// `Q(p) = sqrt((1 - 2p) / (4 ln((1 - p) / p)))`, with the removable
/// singularity at `p = 1/2` filled by the series
/// `Q^2 = (1/8)(1 - (1 - 2p)^2 / 3 + ...)` for `|p - 1/2| < 1e-6`
/// (direct evaluation loses ~6 digits to 0/0 cancellation there).
pub fn q_norm(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "q_norm needs p in (0, 1), got {p}");
    let t = 1.0 - 2.0 * p;
    if (p - 0.5).abs() < 1e-6 {
        (0.125 * (1.0 - t * t / 3.0)).sqrt()
    } else {
        let log_ratio = (1.0 - p).ln() - p.ln();
        (t / (4.0 * log_ratio)).sqrt()
    }
}

/// Signed log-space margin of the quadrant inequality
/// `beta_r(lambda) <= cosh(lambda / 2)` for `r in (1/2, 1)`, `lambda >= 0`:
/// returns `ln cosh(lambda/2) - ln beta_r(lambda)`, which must be
/// non-negative on this quadrant.
pub fn check_quadrant_inequality(r: f64, lambda: f64) -> f64 {
    assert!(
        r > 0.5 && r < 1.0,
        "quadrant check needs r in (1/2, 1), got {r}"
    );
    assert!(
        lambda >= 0.0 && lambda.is_finite(),
        "quadrant check needs lambda >= 0, got {lambda}"
    );
    log_cosh(0.5 * lambda) - log_beta(r, lambda)
}

/// One audited `lambda`: the supremum of `ln beta_r` over the r-grid against
/// the two reference envelopes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeAuditRow {
    pub lambda: f64,
    /// Max over the r-grid of `ln beta_r(lambda)`.
    pub sup_log_beta: f64,
    /// Grid r attaining the supremum.
    pub arg_r: f64,
    /// `ln cosh(lambda / 2)`.
    pub log_cosh_half: f64,
    /// `ln cosh(lambda)`.
    pub log_cosh_full: f64,
}

/// A grid point where `beta_r(lambda)` exceeds `cosh(lambda / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeFlag {
    pub r: f64,
    pub lambda: f64,
    pub log_beta: f64,
    pub log_cosh_half: f64,
    /// `ln beta_r(lambda) - ln cosh(lambda / 2)`, positive by construction.
    pub log_excess: f64,
}

/// Descriptive audit of the claim `sup_r beta_r(lambda) = cosh(lambda / 2)`:
/// per-lambda suprema with reference envelopes, and every grid point where
/// the claim fails. It reports rather than asserts, since the claim holds on
/// the quadrant `lambda (2r - 1) >= 0` and fails off it.
#[derive(Debug, Clone, PartialEq)]
pub struct MgfEnvelopeAudit {
    /// One row per lambda, sorted by lambda.
    pub rows: Vec<EnvelopeAuditRow>,
    /// All flagged grid points, sorted by (lambda, r).
    pub flags: Vec<EnvelopeFlag>,
}

impl MgfEnvelopeAudit {
    /// True when no flagged point lies in the quadrant `lambda (2r - 1) >= 0`.
    pub fn quadrant_holds(&self) -> bool {
        self.flags
            .iter()
            .all(|f| f.lambda * (2.0 * f.r - 1.0) < 0.0)
    }

    pub fn flag_at(&self, r: f64, lambda: f64) -> Option<&EnvelopeFlag> {
        self.flags.iter().find(|f| f.r == r && f.lambda == lambda)
    }
}

/// Run the envelope audit over explicit grids. Grid values must satisfy
/// `r in (0, 1)`; lambda values must be finite.
pub fn audit_mgf_envelope(
    r_grid: &[f64],
    lambda_grid: &[f64],
) -> Result<MgfEnvelopeAudit, BinaryError> {
    let mut rs: Vec<f64> = r_grid.to_vec();
    let mut lams: Vec<f64> = lambda_grid.to_vec();
    rs.sort_by(|a, b| a.partial_cmp(b).expect("finite r grid"));
    lams.sort_by(|a, b| a.partial_cmp(b).expect("finite lambda grid"));
    for &r in &rs {
        if !(r > 0.0 && r < 1.0) {
            return Err(BinaryError::InvalidProbability(r));
        }
    }

    let mut rows = Vec::with_capacity(lams.len());
    let mut flags = Vec::new();
    for &lam in &lams {
        let half = log_cosh(0.5 * lam);
        let full = log_cosh(lam);
        let mut sup = f64::NEG_INFINITY;
        let mut arg_r = rs[0];
        for &r in &rs {
            let lb = log_beta(r, lam);
            if lb > sup {
                sup = lb;
                arg_r = r;
            }
            if lb > half + 1e-12 {
                flags.push(EnvelopeFlag {
                    r,
                    lambda: lam,
                    log_beta: lb,
                    log_cosh_half: half,
                    log_excess: lb - half,
                });
            }
        }
        rows.push(EnvelopeAuditRow {
            lambda: lam,
            sup_log_beta: sup,
            arg_r,
            log_cosh_half: half,
            log_cosh_full: full,
        });
    }
    Ok(MgfEnvelopeAudit { rows, flags })
}
