//! Generator-norm machinery: an even convex generator `phi` with
//! `phi(0) = 0` defines, for a centered variable with log-mgf `L`, the norm
//!
//! ```text
//! tau = inf { t >= 0 : L(lambda) <= phi(lambda t) for all lambda }
//! ```
//!
//! This module fits that norm from an mgf oracle by per-lambda bisection and
//! a supremum scan over a log-spaced grid, computes the subgaussian norm
//! (the `phi(lambda) = lambda^2` special case, evaluated directly as
//! `sup sqrt(L(lambda)) / |lambda|`), and turns a fitted norm into the
//! Chernoff tail bound `exp(-phi*(x / tau))`.

use std::sync::Arc;

use crate::fenchel::{self, ConjugableFunction};
use crate::search::{bisect_rising, golden_max};

/// Log-spaced scan grid for the supremum over `lambda`, mirrored to negative
/// arguments. `lambda_max` doubles automatically up to `lambda_cap` while the
/// running supremum still moves.
#[derive(Debug, Clone, Copy)]
pub struct LambdaGrid {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub points_per_decade: u32,
    pub lambda_cap: f64,
}

impl Default for LambdaGrid {
    fn default() -> Self {
        Self {
            lambda_min: 1e-6,
            lambda_max: 1e4,
            points_per_decade: 400,
            lambda_cap: 1e8,
        }
    }
}

/// Errors from generator validation and norm fitting.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiSpacesError {
    /// Generator failed a sampled structural check (origin, symmetry,
    /// convexity, positivity).
    InvalidGenerator(String),
    /// Mgf oracle failed a sampled structural check.
    InvalidMgf(String),
    /// The oracle's log-mgf has nonzero slope at 0; the variable is not
    /// centered and fitting refuses it.
    NotCentered { derivative: f64 },
    /// The supremum defining the norm keeps growing past the scan cap.
    Unbounded,
}

impl std::fmt::Display for PhiSpacesError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhiSpacesError::InvalidGenerator(msg) => write!(f, "invalid generator: {msg}"),
            PhiSpacesError::InvalidMgf(msg) => write!(f, "invalid mgf oracle: {msg}"),
            PhiSpacesError::NotCentered { derivative } => {
                write!(
                    f,
                    "mgf oracle is not centered: log-mgf slope at 0 is {derivative:e}"
                )
            }
            PhiSpacesError::Unbounded => write!(f, "norm is unbounded on the scanned range"),
        }
    }
}

impl std::error::Error for PhiSpacesError {}

/// An even convex generator `phi` with `phi(0) = 0`, positive away from 0.
///
/// Outside `(-lambda0, lambda0)` evaluation returns `+inf` (the usual convex
/// extension), so fitting against finite-domain generators stays well posed.
#[derive(Clone)]
pub struct PhiFunction {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    lambda0: f64,
    label: String,
    second_deriv_at_zero: Option<f64>,
}

impl std::fmt::Debug for PhiFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PhiFunction")
            .field("label", &self.label)
            .field("lambda0", &self.lambda0)
            .field("second_deriv_at_zero", &self.second_deriv_at_zero)
            .finish()
    }
}

impl PhiFunction {
    /// Wrap and validate a generator: `phi(0) = 0` (1e-12), even symmetry
    /// (1e-12 on a sampled grid), midpoint convexity (1e-10), positive for
    /// positive arguments.
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        lambda0: f64,
        second_deriv_at_zero: Option<f64>,
    ) -> Result<Self, PhiSpacesError> {
        assert!(lambda0 > 0.0, "lambda0 must be positive");
        let phi = Self {
            f: Arc::new(f),
            lambda0,
            label: label.into(),
            second_deriv_at_zero,
        };
        phi.validate()?;
        Ok(phi)
    }

    fn validate(&self) -> Result<(), PhiSpacesError> {
        let at0 = self.evaluate(0.0);
        if at0.abs() > 1e-12 {
            return Err(PhiSpacesError::InvalidGenerator(format!(
                "phi(0) = {at0:e}, expected 0"
            )));
        }
        let hi = if self.lambda0.is_finite() {
            self.lambda0 * (1.0 - 1e-9)
        } else {
            1e3
        };
        for lam in log_grid(1e-6, hi, 16) {
            let plus = self.evaluate(lam);
            let minus = self.evaluate(-lam);
            if (plus - minus).abs() > 1e-12 * (1.0 + plus.abs()) {
                return Err(PhiSpacesError::InvalidGenerator(format!(
                    "phi not even at lambda = {lam}"
                )));
            }
            if !(plus > 0.0) {
                return Err(PhiSpacesError::InvalidGenerator(format!(
                    "phi({lam}) = {plus}, expected > 0"
                )));
            }
        }
        const G1: f64 = 0.618_033_988_749_894_9;
        const G2: f64 = 0.754_877_666_246_693;
        for i in 1..=4096usize {
            let a = -hi + 2.0 * hi * (i as f64 * G1).fract();
            let b = -hi + 2.0 * hi * (i as f64 * G2).fract();
            let fa = self.evaluate(a);
            let fb = self.evaluate(b);
            let fm = self.evaluate(0.5 * (a + b));
            if fm > 0.5 * (fa + fb) + 1e-10 * (1.0 + fa.abs() + fb.abs()) {
                return Err(PhiSpacesError::InvalidGenerator(format!(
                    "midpoint convexity fails between {a} and {b}"
                )));
            }
        }
        Ok(())
    }

    /// The Rademacher generator `ln cosh(lambda / 2)`: the exact log-mgf of a
    /// symmetric two-point variable at +/- 1/2.
    pub fn rademacher() -> Self {
        Self::new(
            "rademacher",
            |lam| crate::specials::log_cosh(0.5 * lam),
            f64::INFINITY,
            Some(0.25),
        )
        .expect("stock generator is valid")
    }

    /// The subgaussian generator `lambda^2`.
    pub fn quadratic() -> Self {
        Self::new("quadratic", |lam| lam * lam, f64::INFINITY, Some(2.0))
            .expect("stock generator is valid")
    }

    pub fn evaluate(&self, lambda: f64) -> f64 {
        if lambda.abs() >= self.lambda0 {
            f64::INFINITY
        } else {
            (self.f)(lambda)
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn second_deriv_at_zero(&self) -> Option<f64> {
        self.second_deriv_at_zero
    }

    /// View as a conjugable function (convexity already sampled at
    /// construction).
    pub fn as_conjugable(&self) -> ConjugableFunction {
        let f = self.clone();
        ConjugableFunction::trusted_convex(move |x| f.evaluate(x), -self.lambda0, self.lambda0)
    }
}

/// A centered variable seen only through its log moment generating function.
#[derive(Clone)]
pub struct MgfOracle {
    log_mgf: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    domain: (f64, f64),
}

impl std::fmt::Debug for MgfOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MgfOracle")
            .field("domain", &self.domain)
            .finish()
    }
}

impl MgfOracle {
    /// Wrap and validate: `log_mgf(0) = 0` within 1e-12 and midpoint
    /// convexity on a sampled grid.
    pub fn new(
        log_mgf: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain_lo: f64,
        domain_hi: f64,
    ) -> Result<Self, PhiSpacesError> {
        assert!(
            domain_lo < 0.0 && domain_hi > 0.0,
            "mgf domain must straddle 0"
        );
        let oracle = Self {
            log_mgf: Arc::new(log_mgf),
            domain: (domain_lo, domain_hi),
        };
        let at0 = oracle.log_mgf(0.0);
        if at0.abs() > 1e-12 {
            return Err(PhiSpacesError::InvalidMgf(format!(
                "log_mgf(0) = {at0:e}, expected 0"
            )));
        }
        let lo = domain_lo.max(-1e3);
        let hi = domain_hi.min(1e3);
        const G1: f64 = 0.618_033_988_749_894_9;
        const G2: f64 = 0.754_877_666_246_693;
        for i in 1..=4096usize {
            let a = lo + (hi - lo) * (i as f64 * G1).fract();
            let b = lo + (hi - lo) * (i as f64 * G2).fract();
            let fa = oracle.log_mgf(a);
            let fb = oracle.log_mgf(b);
            let fm = oracle.log_mgf(0.5 * (a + b));
            if fm > 0.5 * (fa + fb) + 1e-10 * (1.0 + fa.abs() + fb.abs()) {
                return Err(PhiSpacesError::InvalidMgf(format!(
                    "log_mgf not convex between {a} and {b}"
                )));
            }
        }
        Ok(oracle)
    }

    /// Centered Gaussian: `log_mgf(lambda) = lambda^2 sigma^2 / 2`.
    pub fn gaussian(sigma: f64) -> Self {
        assert!(sigma > 0.0);
        Self::new(
            move |lam| 0.5 * lam * lam * sigma * sigma,
            f64::NEG_INFINITY,
            f64::INFINITY,
        )
        .expect("gaussian log-mgf is valid")
    }

    /// The a.s. zero variable: `log_mgf` identically 0.
    pub fn degenerate() -> Self {
        Self::new(|_| 0.0, f64::NEG_INFINITY, f64::INFINITY).expect("degenerate log-mgf is valid")
    }

    pub fn log_mgf(&self, lambda: f64) -> f64 {
        (self.log_mgf)(lambda)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Oracle of the scaled variable `c xi`: `log_mgf(c lambda)`.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c > 0.0 && c.is_finite());
        let inner = self.log_mgf.clone();
        let (lo, hi) = self.domain;
        Self {
            log_mgf: Arc::new(move |lam| inner(c * lam)),
            domain: (lo / c, hi / c),
        }
    }
}

/// A fitted generator norm: the least `tau` with
/// `log_mgf(lambda) <= phi(lambda tau)` on the scanned grid (reported from
/// the guaranteed side, over-estimating by at most ~1e-6 relative).
#[derive(Debug, Clone)]
pub struct BphiNorm {
    pub tau: f64,
    pub phi: PhiFunction,
    /// Grid `lambda` where the defining supremum was attained.
    pub achieved_at: f64,
}

pub(crate) fn log_grid(lo: f64, hi: f64, points_per_decade: u32) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi > lo);
    let decades = (hi / lo).log10();
    let n = ((decades * points_per_decade as f64).ceil() as usize).max(1);
    let step = decades / n as f64;
    let mut pts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        pts.push(lo * 10f64.powf(step * i as f64));
    }
    pts
}

fn check_centered(mgf: &MgfOracle) -> Result<(), PhiSpacesError> {
    let eps = 1e-6;
    let derivative = (mgf.log_mgf(eps) - mgf.log_mgf(-eps)) / (2.0 * eps);
    if derivative.abs() > 1e-8 {
        return Err(PhiSpacesError::NotCentered { derivative });
    }
    Ok(())
}

/// Supremum of `value_at` over signed lambda: scans the mirrored log grid,
/// doubles `lambda_max` (up to the cap) while the supremum still gains more
/// than 1e-8, then golden-refines around the best grid point. Errors with
/// `Unbounded` if the cap is hit while still gaining.
fn sup_over_lambda(
    grid: &LambdaGrid,
    value_at: impl Fn(f64) -> f64,
) -> Result<(f64, f64), PhiSpacesError> {
    let mut best = f64::NEG_INFINITY;
    let mut best_arg = 0.0;
    let scan = |lo: f64, hi: f64, best: &mut f64, best_arg: &mut f64| {
        for lam in log_grid(lo, hi, grid.points_per_decade) {
            for sign in [1.0, -1.0] {
                let v = value_at(sign * lam);
                if v > *best {
                    *best = v;
                    *best_arg = sign * lam;
                }
            }
        }
    };

    let mut hi = grid.lambda_max.min(grid.lambda_cap);
    scan(grid.lambda_min, hi, &mut best, &mut best_arg);
    loop {
        if !best.is_finite() {
            return Err(PhiSpacesError::Unbounded);
        }
        if hi >= grid.lambda_cap {
            // Still gaining at the cap? Probe half an octave past it.
            let mut probe = best;
            let mut probe_arg = best_arg;
            scan(hi, hi * 1.5, &mut probe, &mut probe_arg);
            if probe - best > 1e-8 * best.abs().max(1.0) {
                return Err(PhiSpacesError::Unbounded);
            }
            break;
        }
        let prev = best;
        let new_hi = (hi * 2.0).min(grid.lambda_cap);
        scan(hi, new_hi, &mut best, &mut best_arg);
        hi = new_hi;
        if best - prev <= 1e-8 * best.abs().max(1.0) {
            break;
        }
    }

    // Local refinement around the winning grid point, on its sign branch.
    let ratio = 10f64.powf(1.0 / grid.points_per_decade as f64);
    let mag = best_arg.abs().max(grid.lambda_min);
    let sign = if best_arg < 0.0 { -1.0 } else { 1.0 };
    let (arg_ref, val_ref) = golden_max(
        |m| value_at(sign * m),
        (mag / ratio).max(grid.lambda_min * 0.5),
        (mag * ratio).min(grid.lambda_cap),
        1e-12,
        120,
    );
    if val_ref > best {
        best = val_ref;
        best_arg = sign * arg_ref;
    }
    Ok((best, best_arg))
}

/// Fit the generator norm of a centered mgf oracle against `phi`.
///
/// Per lambda, the least `t` with `log_mgf(lambda) <= phi(lambda t)` comes
/// from monotone bisection (terminating at 1e-8 relative width, reported
/// from the inequality-satisfying side); the norm is the supremum over the
/// signed grid with golden refinement around the maximizer.
pub fn fit_bphi_norm(
    mgf: &MgfOracle,
    phi: &PhiFunction,
    grid: &LambdaGrid,
) -> Result<BphiNorm, PhiSpacesError> {
    check_centered(mgf)?;
    let (dlo, dhi) = mgf.domain();
    let tau_for = |lam: f64| -> f64 {
        if lam < dlo || lam > dhi {
            return f64::NEG_INFINITY;
        }
        let target = mgf.log_mgf(lam);
        if !(target > 0.0) {
            return 0.0;
        }
        let mag = lam.abs();
        let mut hi = 1.0;
        let mut guard = 0;
        while phi.evaluate(mag * hi) < target {
            hi *= 2.0;
            guard += 1;
            if guard > 1100 {
                return f64::INFINITY;
            }
        }
        bisect_rising(|t| phi.evaluate(mag * t), 0.0, hi, target, 1e-8, 200)
    };
    let (tau, achieved_at) = sup_over_lambda(grid, tau_for)?;
    if !tau.is_finite() {
        return Err(PhiSpacesError::Unbounded);
    }
    Ok(BphiNorm {
        tau: tau.max(0.0),
        phi: phi.clone(),
        achieved_at,
    })
}

/// The subgaussian norm `sup_{lambda != 0} sqrt(log_mgf(lambda)) / |lambda|`.
///
/// The limit at 0 is captured by explicit evaluations at `1e-5` and `5e-6`
/// on both signs (the larger of the two enters the supremum, which also
/// serves as a step-halving stability check on the limit value).
pub fn subgaussian_norm(mgf: &MgfOracle, grid: &LambdaGrid) -> Result<f64, PhiSpacesError> {
    check_centered(mgf)?;
    let (dlo, dhi) = mgf.domain();
    let ratio = |lam: f64| -> f64 {
        if lam == 0.0 || lam < dlo || lam > dhi {
            return f64::NEG_INFINITY;
        }
        let l = mgf.log_mgf(lam);
        if !(l > 0.0) {
            return 0.0;
        }
        l.sqrt() / lam.abs()
    };
    let (mut best, _) = sup_over_lambda(grid, ratio)?;
    for eps in [1e-5, 5e-6] {
        best = best.max(ratio(eps)).max(ratio(-eps));
    }
    if !best.is_finite() {
        return Err(PhiSpacesError::Unbounded);
    }
    Ok(best.max(0.0))
}

/// Chernoff bound implied by a fitted norm: `exp(-phi*(x / tau))`, a valid
/// upper bound on `max(P(xi > x), P(xi < -x))`. A `+inf` conjugate (possible
/// past the generator's slope range) collapses the bound to 0.
pub fn tail_bound_from_norm(norm: &BphiNorm, x: f64) -> f64 {
    assert!(norm.tau > 0.0, "tail bound needs a positive norm");
    assert!(x > 0.0, "tail bound needs a positive threshold");
    let conj = norm.phi.as_conjugable();
    let exponent = fenchel::conjugate(&conj, x / norm.tau).expect("generator is certified convex");
    if exponent.is_infinite() {
        0.0
    } else {
        (-exponent.max(0.0)).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specials::{log_cosh, log_mix_exp};

    /// Log-mgf of the centered indicator with parameter `p` (two atoms:
    /// `1 - p` with mass `p`, `-p` with mass `1 - p`), built from first
    /// principles to keep this module's tests self-contained.
    fn two_point_log_mgf(p: f64) -> MgfOracle {
        MgfOracle::new(
            move |lam: f64| log_mix_exp(&[(lam * (1.0 - p), p), (-lam * p, 1.0 - p)]),
            f64::NEG_INFINITY,
            f64::INFINITY,
        )
        .unwrap()
    }

    #[test]
    fn rademacher_norm_is_one() {
        let mgf =
            MgfOracle::new(|lam| log_cosh(0.5 * lam), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let norm = fit_bphi_norm(&mgf, &PhiFunction::rademacher(), &LambdaGrid::default()).unwrap();
        assert!((norm.tau - 1.0).abs() < 1e-6, "tau = {}", norm.tau);
        // The defining inequality holds on a fresh validation grid disjoint
        // from the fitting grid.
        for lam in log_grid(3.3e-6, 3.3e3, 37) {
            for sign in [1.0, -1.0] {
                let l = mgf.log_mgf(sign * lam);
                let bound = norm.phi.evaluate(sign * lam * norm.tau);
                assert!(l <= bound + 1e-9, "violation at lambda = {}", sign * lam);
            }
        }
    }

    #[test]
    fn degenerate_variable_has_zero_norm() {
        let norm = fit_bphi_norm(
            &MgfOracle::degenerate(),
            &PhiFunction::rademacher(),
            &LambdaGrid::default(),
        )
        .unwrap();
        assert_eq!(norm.tau, 0.0);
    }

    #[test]
    fn fit_rejects_uncentered_oracle() {
        let mgf = MgfOracle::new(
            |lam| 0.5 * lam * lam + 0.1 * lam,
            f64::NEG_INFINITY,
            f64::INFINITY,
        )
        .unwrap();
        match fit_bphi_norm(&mgf, &PhiFunction::quadratic(), &LambdaGrid::default()) {
            Err(PhiSpacesError::NotCentered { derivative }) => {
                assert!((derivative - 0.1).abs() < 1e-6);
            }
            other => panic!("expected NotCentered, got {other:?}"),
        }
    }

    #[test]
    fn scaling_rule_for_fitted_norm() {
        let mgf =
            MgfOracle::new(|lam| log_cosh(0.5 * lam), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let phi = PhiFunction::rademacher();
        let grid = LambdaGrid::default();
        let base = fit_bphi_norm(&mgf, &phi, &grid).unwrap().tau;
        for &c in &[0.4, 2.5] {
            let scaled = fit_bphi_norm(&mgf.scaled(c), &phi, &grid).unwrap().tau;
            assert!(
                (scaled - c * base).abs() <= 1e-6 * c * base,
                "c = {c}: {scaled} vs {}",
                c * base
            );
        }
    }

    #[test]
    fn gaussian_subgaussian_norm_is_sigma_over_sqrt2() {
        let norm = subgaussian_norm(&MgfOracle::gaussian(1.0), &LambdaGrid::default()).unwrap();
        let expected = 1.0 / 2f64.sqrt();
        assert!((norm - expected).abs() < 1e-9, "norm = {norm}");
    }

    #[test]
    fn symmetric_two_point_subgaussian_norm_at_half() {
        // sup sqrt(ln cosh(lambda/2)) / |lambda| is attained as lambda -> 0
        // with value sqrt(1/8).
        let norm = subgaussian_norm(&two_point_log_mgf(0.5), &LambdaGrid::default()).unwrap();
        let expected = 0.125f64.sqrt();
        assert!(
            (norm - expected).abs() < 1e-4,
            "norm = {norm}, expected {expected}"
        );
    }

    #[test]
    fn subgaussian_norm_matches_quadratic_fit_for_symmetric_two_point() {
        let grid = LambdaGrid::default();
        for &c in &[0.5, 1.0, 2.3] {
            let mgf = MgfOracle::new(
                move |lam| log_cosh(c * lam),
                f64::NEG_INFINITY,
                f64::INFINITY,
            )
            .unwrap();
            let direct = subgaussian_norm(&mgf, &grid).unwrap();
            let fitted = fit_bphi_norm(&mgf, &PhiFunction::quadratic(), &grid)
                .unwrap()
                .tau;
            assert!(
                (direct - fitted).abs() <= 1e-6 * (1.0 + fitted),
                "c = {c}: {direct} vs {fitted}"
            );
        }
    }

    #[test]
    fn heavy_tailed_oracle_is_flagged_unbounded() {
        let mgf = MgfOracle::new(|lam: f64| lam.powi(4), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert_eq!(
            subgaussian_norm(&mgf, &LambdaGrid::default()).unwrap_err(),
            PhiSpacesError::Unbounded
        );
    }

    #[test]
    fn tail_bound_quadratic_generator() {
        // phi = lambda^2, tau = 1, x = 2: conjugate is u^2/4, bound exp(-1).
        let norm = BphiNorm {
            tau: 1.0,
            phi: PhiFunction::quadratic(),
            achieved_at: 0.0,
        };
        let bound = tail_bound_from_norm(&norm, 2.0);
        assert!((bound - (-1.0f64).exp()).abs() < 1e-8, "bound = {bound}");
    }

    #[test]
    fn tail_bound_valid_for_bounded_variable() {
        // Symmetric two-point at +/- 1/2: the bound is valid on both sides of
        // the support edge. Inside it is positive (and loose); past the
        // generator's slope range the conjugate is +inf and the bound
        // collapses to 0, matching the true tail there.
        let mgf =
            MgfOracle::new(|lam| log_cosh(0.5 * lam), f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let norm = fit_bphi_norm(&mgf, &PhiFunction::rademacher(), &LambdaGrid::default()).unwrap();
        let inside = tail_bound_from_norm(&norm, 0.4);
        assert!((0.5..=1.0).contains(&inside), "inside = {inside}");
        let outside = tail_bound_from_norm(&norm, 0.8);
        assert_eq!(outside, 0.0);
    }

    #[test]
    fn tail_bound_dominates_exact_two_point_tail() {
        // 1000 (p, x) pairs; tau fitted once per p. Exact tail of the
        // centered indicator: P(eta = 1 - p) = p for x < 1 - p, etc.
        let grid = LambdaGrid::default();
        let mut state = 0x00ddceedu64;
        let mut rnd = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..40 {
            let p = 0.02 + 0.96 * rnd();
            let mgf = two_point_log_mgf(p);
            let norm = fit_bphi_norm(&mgf, &PhiFunction::rademacher(), &grid).unwrap();
            for _ in 0..25 {
                let x = 1e-3 + rnd() * 1.2;
                let exact_upper = if x < 1.0 - p { p } else { 0.0 };
                let exact_lower = if x < p { 1.0 - p } else { 0.0 };
                let exact = exact_upper.max(exact_lower);
                let bound = tail_bound_from_norm(&norm, x);
                assert!(
                    bound >= exact - 1e-12,
                    "p = {p}, x = {x}: bound {bound} < exact {exact}"
                );
            }
        }
    }

    #[test]
    fn eta_tail_example_at_p_half() {
        let mgf = two_point_log_mgf(0.5);
        let norm = fit_bphi_norm(&mgf, &PhiFunction::rademacher(), &LambdaGrid::default()).unwrap();
        let bound = tail_bound_from_norm(&norm, 0.4);
        assert!(
            bound >= 0.5,
            "bound = {bound} must dominate the exact tail 0.5"
        );
    }
}
