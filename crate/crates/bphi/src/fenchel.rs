//! Young-Fenchel (Legendre) conjugation: `f*(u) = sup_lambda (lambda u - f(lambda))`,
//! numeric for certified-convex functions and closed-form for power laws,
//! with a double-conjugation (Fenchel-Moreau) round-trip check.

use std::sync::Arc;

use crate::search::golden_max;

/// Search cap: conjugates are reported as `+inf` when the objective is still
/// rising at `|lambda| = 1e12` and the true domain extends further.
pub const DOMAIN_CAP: f64 = 1e12;

const GOLDEN_REL_TOL: f64 = 1e-10;
const GOLDEN_MAX_ITERS: usize = 200;

/// Errors from conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FenchelError {
    /// The function was not certified convex before conjugation.
    NotConvex,
    /// Invalid parameter for a closed-form conjugate.
    Domain(String),
}

impl std::fmt::Display for FenchelError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FenchelError::NotConvex => write!(f, "function is not certified convex"),
            FenchelError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for FenchelError {}

/// A scalar function on an interval, tagged once midpoint-convexity sampling
/// has passed. Conjugation refuses uncertified functions.
#[derive(Clone)]
pub struct ConjugableFunction {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    domain_lo: f64,
    domain_hi: f64,
    convex_certified: bool,
}

impl std::fmt::Debug for ConjugableFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConjugableFunction")
            .field("domain_lo", &self.domain_lo)
            .field("domain_hi", &self.domain_hi)
            .field("convex_certified", &self.convex_certified)
            .finish()
    }
}

impl ConjugableFunction {
    /// Wrap a function on `[domain_lo, domain_hi]` (ends may be infinite).
    /// The result is uncertified until [`certify_convex`](Self::certify_convex) passes.
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain_lo: f64,
        domain_hi: f64,
    ) -> Self {
        assert!(
            domain_lo < domain_hi,
            "empty domain [{domain_lo}, {domain_hi}]"
        );
        Self {
            f: Arc::new(f),
            domain_lo,
            domain_hi,
            convex_certified: false,
        }
    }

    /// Wrap and certify in one step; fails with `NotConvex` if sampling does.
    pub fn certified(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain_lo: f64,
        domain_hi: f64,
    ) -> Result<Self, FenchelError> {
        let mut g = Self::new(f, domain_lo, domain_hi);
        if g.certify_convex(10_000) {
            Ok(g)
        } else {
            Err(FenchelError::NotConvex)
        }
    }

    /// Wrap a function that is convex by construction (conjugates, suprema of
    /// convex families) without re-sampling.
    pub fn trusted_convex(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain_lo: f64,
        domain_hi: f64,
    ) -> Self {
        let mut g = Self::new(f, domain_lo, domain_hi);
        g.convex_certified = true;
        g
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.domain_lo, self.domain_hi)
    }

    pub fn is_convex_certified(&self) -> bool {
        self.convex_certified
    }

    /// Midpoint-convexity sampling on `pairs` low-discrepancy pairs drawn
    /// from the domain (capped at |lambda| = 1e6). Sets and returns the flag.
    pub fn certify_convex(&mut self, pairs: usize) -> bool {
        let lo = self.domain_lo.max(-1e6);
        let hi = self.domain_hi.min(1e6);
        let span = hi - lo;
        // Two golden-ratio sequences give well-spread deterministic pairs.
        const G1: f64 = 0.618_033_988_749_894_9;
        const G2: f64 = 0.754_877_666_246_693;
        let mut ok = true;
        for i in 1..=pairs {
            let a = lo + span * (i as f64 * G1).fract();
            let b = lo + span * (i as f64 * G2).fract();
            let fa = (self.f)(a);
            let fb = (self.f)(b);
            let fm = (self.f)(0.5 * (a + b));
            let tol = 1e-10 * (1.0 + fa.abs() + fb.abs());
            if fm > 0.5 * (fa + fb) + tol {
                ok = false;
                break;
            }
        }
        self.convex_certified = ok;
        ok
    }
}

/// `f*(u)` together with the maximizing `lambda`.
///
/// The concave objective `lambda u - f(lambda)` is bracketed by doubling
/// steps away from the domain's anchor point until it stops rising, then
/// resolved by golden-section search; finite domain endpoints are always
/// evaluated explicitly. Returns `(inf, inf-side lambda)` when the objective
/// is still rising at the `1e12` cap of an unbounded domain.
pub fn conjugate_with_argmax(f: &ConjugableFunction, u: f64) -> Result<(f64, f64), FenchelError> {
    if !f.convex_certified {
        return Err(FenchelError::NotConvex);
    }
    assert!(u.is_finite(), "conjugate target must be finite, got {u}");
    let (dlo, dhi) = f.domain();
    let lo_eff = dlo.max(-DOMAIN_CAP);
    let hi_eff = dhi.min(DOMAIN_CAP);
    let h = |x: f64| u * x - f.eval(x);
    let anchor = 0.0_f64.clamp(lo_eff, hi_eff);

    // Expand right: stop at the first non-increase (concavity then bounds the
    // maximum inside the bracket) or at the effective end.
    let mut right = anchor;
    let mut h_right = h(right);
    let mut rising_at_right_end = false;
    let mut step = 1.0;
    loop {
        if right >= hi_eff {
            break;
        }
        let next = (anchor + step).min(hi_eff);
        let h_next = h(next);
        let was_rising = h_next > h_right;
        right = next;
        h_right = h_next;
        if !was_rising {
            rising_at_right_end = false;
            break;
        }
        rising_at_right_end = true;
        step *= 2.0;
    }
    if rising_at_right_end && dhi > DOMAIN_CAP {
        return Ok((f64::INFINITY, f64::INFINITY));
    }

    // Mirror expansion to the left.
    let mut left = anchor;
    let mut h_left = h(left);
    let mut rising_at_left_end = false;
    step = 1.0;
    loop {
        if left <= lo_eff {
            break;
        }
        let next = (anchor - step).max(lo_eff);
        let h_next = h(next);
        let was_rising = h_next > h_left;
        left = next;
        h_left = h_next;
        if !was_rising {
            rising_at_left_end = false;
            break;
        }
        rising_at_left_end = true;
        step *= 2.0;
    }
    if rising_at_left_end && dlo < -DOMAIN_CAP {
        return Ok((f64::INFINITY, f64::NEG_INFINITY));
    }

    let (x_star, h_star) = golden_max(h, left, right, GOLDEN_REL_TOL, GOLDEN_MAX_ITERS);
    let mut best = (x_star, h_star);
    for cand in [anchor, left, right, dlo, dhi] {
        if cand.is_finite() && cand >= lo_eff && cand <= hi_eff {
            let hc = h(cand);
            if hc > best.1 {
                best = (cand, hc);
            }
        }
    }
    Ok((best.1, best.0))
}

/// `f*(u) = sup_lambda (lambda u - f(lambda))`; `+inf` sentinel when the
/// supremum escapes past the domain cap.
pub fn conjugate(f: &ConjugableFunction, u: f64) -> Result<f64, FenchelError> {
    conjugate_with_argmax(f, u).map(|(v, _)| v)
}

/// Closed-form conjugate of `f(lambda) = scale * lambda^a` over `lambda >= 0`
/// for `a > 1`: `(a - 1) * scale * (u / (a * scale))^{a/(a-1)}`, and 0 for
/// `u <= 0`.
pub fn conjugate_power_law(a_exponent: f64, scale: f64, u: f64) -> Result<f64, FenchelError> {
    if !(a_exponent > 1.0) {
        return Err(FenchelError::Domain(format!(
            "power-law conjugate needs exponent > 1, got {a_exponent}"
        )));
    }
    if !(scale > 0.0) {
        return Err(FenchelError::Domain(format!(
            "power-law conjugate needs scale > 0, got {scale}"
        )));
    }
    if u <= 0.0 {
        return Ok(0.0);
    }
    let ratio = u / (a_exponent * scale);
    Ok((a_exponent - 1.0) * scale * ratio.powf(a_exponent / (a_exponent - 1.0)))
}

/// Max of `|f**(lambda) - f(lambda)|` over `sample_points`, with `f*`
/// evaluated on demand and conjugated again.
///
/// The `u`-search for the second conjugation is restricted to slightly
/// inside the slope range of `f` on unbounded sides, where `f*` is finite.
pub fn fenchel_moreau_check(
    f: &ConjugableFunction,
    sample_points: &[f64],
) -> Result<f64, FenchelError> {
    if !f.is_convex_certified() {
        return Err(FenchelError::NotConvex);
    }
    let (dlo, dhi) = f.domain();

    let slope_at = |x0: f64, x1: f64| (f.eval(x1) - f.eval(x0)) / (x1 - x0);
    let u_hi = if dhi > DOMAIN_CAP {
        let b = 1e8_f64.min(DOMAIN_CAP);
        let s = slope_at(b * (1.0 - 1e-6), b);
        s - 1e-9 * (1.0 + s.abs())
    } else {
        f64::INFINITY
    };
    let u_lo = if dlo < -DOMAIN_CAP {
        let b = -1e8_f64.max(-DOMAIN_CAP);
        let s = slope_at(b, b * (1.0 - 1e-6));
        s + 1e-9 * (1.0 + s.abs())
    } else {
        f64::NEG_INFINITY
    };

    let inner = f.clone();
    let fstar = ConjugableFunction::trusted_convex(
        move |u: f64| conjugate(&inner, u).expect("inner function stays certified"),
        u_lo,
        u_hi,
    );

    let mut worst = 0.0_f64;
    for &x in sample_points {
        let fss = conjugate(&fstar, x)?;
        let dev = (fss - f.eval(x)).abs();
        if dev > worst {
            worst = dev;
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specials::log_cosh;

    #[test]
    fn conjugate_of_square_is_quarter_square() {
        let f = ConjugableFunction::certified(|x| x * x, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let (v, arg) = conjugate_with_argmax(&f, 2.0).unwrap();
        assert!((v - 1.0).abs() < 1e-9, "v = {v}");
        assert!((arg - 1.0).abs() < 1e-5, "arg = {arg}");
        // Negative target lands on the mirror side.
        let v = conjugate(&f, -3.0).unwrap();
        assert!((v - 9.0 / 4.0).abs() < 1e-9);
    }

    #[test]
    fn conjugate_power_law_on_shifted_domain() {
        // sup over [1, inf) of 2 lambda - lambda^{4/3} peaks at lambda = 27/8
        // with value 27/16.
        let f = ConjugableFunction::certified(|x| x.powf(4.0 / 3.0), 1.0, f64::INFINITY).unwrap();
        let v = conjugate(&f, 2.0).unwrap();
        assert!((v - 27.0 / 16.0).abs() < 1e-8, "v = {v}");
    }

    #[test]
    fn conjugate_power_law_matches_brute_force_grid() {
        // Independent oracle: dense log-grid maximization of 2 lambda - lambda^{4/3}.
        let u = 2.0;
        let mut best = f64::NEG_INFINITY;
        let n = 10_000_000usize;
        let (lo, hi) = (1.0f64, 1e6f64);
        let ratio = (hi / lo).ln() / (n as f64 - 1.0);
        for i in 0..n {
            let lam = lo * ((i as f64) * ratio).exp();
            let h = u * lam - lam.powf(4.0 / 3.0);
            if h > best {
                best = h;
            }
        }
        let f = ConjugableFunction::certified(|x| x.powf(4.0 / 3.0), 1.0, f64::INFINITY).unwrap();
        let v = conjugate(&f, u).unwrap();
        assert!(
            (v - best).abs() / best.abs() < 1e-6,
            "numeric {v} vs grid {best}"
        );
    }

    #[test]
    fn conjugate_of_log_cosh_half_at_zero() {
        let f =
            ConjugableFunction::certified(|x| log_cosh(0.5 * x), f64::NEG_INFINITY, f64::INFINITY)
                .unwrap();
        let v = conjugate(&f, 0.0).unwrap();
        assert!(v.abs() < 1e-12, "v = {v}");
    }

    #[test]
    fn conjugate_of_abs_is_indicator() {
        let f = ConjugableFunction::certified(|x: f64| x.abs(), f64::NEG_INFINITY, f64::INFINITY)
            .unwrap();
        let inside = conjugate(&f, 0.5).unwrap();
        assert!(inside.abs() < 1e-9, "inside = {inside}");
        assert_eq!(conjugate(&f, 1.0 + 1e-6).unwrap(), f64::INFINITY);
        assert_eq!(conjugate(&f, -1.5).unwrap(), f64::INFINITY);
    }

    #[test]
    fn uncertified_function_is_rejected() {
        let f = ConjugableFunction::new(|x| x * x, -1.0, 1.0);
        assert_eq!(conjugate(&f, 0.0).unwrap_err(), FenchelError::NotConvex);
    }

    #[test]
    fn non_convex_fails_certification() {
        assert!(ConjugableFunction::certified(|x: f64| -(x * x), -10.0, 10.0).is_err());
        assert!(ConjugableFunction::certified(|x: f64| x.sin(), -10.0, 10.0).is_err());
    }

    #[test]
    fn closed_form_power_conjugate_examples() {
        let q = conjugate_power_law(2.0, 1.0, 3.0).unwrap();
        assert!((q - 9.0 / 4.0).abs() < 1e-14);
        let v = conjugate_power_law(4.0 / 3.0, 1.0, 2.0).unwrap();
        assert!((v - 27.0 / 16.0).abs() < 1e-13);
        assert_eq!(conjugate_power_law(4.0 / 3.0, 1.0, 0.0).unwrap(), 0.0);
        assert!(conjugate_power_law(1.0, 1.0, 2.0).is_err());
        assert!(conjugate_power_law(1.5, 0.0, 2.0).is_err());
    }

    #[test]
    fn closed_form_matches_numeric_across_exponents() {
        for &a in &[4.0 / 3.0, 1.5, 2.0, 3.0] {
            let f =
                ConjugableFunction::certified(move |x: f64| x.abs().powf(a), 0.0, f64::INFINITY)
                    .unwrap();
            let mut u = 0.1;
            while u <= 100.0 {
                let numeric = conjugate(&f, u).unwrap();
                let closed = conjugate_power_law(a, 1.0, u).unwrap();
                let tol = 1e-6 * closed.abs().max(1e-12);
                assert!(
                    (numeric - closed).abs() <= tol,
                    "a = {a}, u = {u}: {numeric} vs {closed}"
                );
                u *= 3.1;
            }
        }
    }

    #[test]
    fn scaling_rule_holds() {
        // (c f)*(u) = c f*(u/c) for c > 0.
        let f =
            ConjugableFunction::certified(|x| log_cosh(0.5 * x), f64::NEG_INFINITY, f64::INFINITY)
                .unwrap();
        for &c in &[0.25, 1.0, 3.5] {
            let scaled = ConjugableFunction::trusted_convex(
                move |x| c * log_cosh(0.5 * x),
                f64::NEG_INFINITY,
                f64::INFINITY,
            );
            // Stay inside the scaled slope range c/2 so both sides are finite.
            for &frac in &[0.1, 0.5, 0.9] {
                let u = frac * c * 0.5;
                let lhs = conjugate(&scaled, u).unwrap();
                let rhs = c * conjugate(&f, u / c).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-7 * (1.0 + rhs.abs()),
                    "c = {c}, u = {u}: {lhs} vs {rhs}"
                );
            }
            // And past it both sides are the +inf sentinel.
            assert_eq!(conjugate(&scaled, c * 0.5 + 1.0).unwrap(), f64::INFINITY);
            assert_eq!(conjugate(&f, 0.5 + 1.0 / c).unwrap(), f64::INFINITY);
        }
    }

    #[test]
    fn youngs_inequality_sampled() {
        let f = ConjugableFunction::certified(|x| x * x, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let mut state = 0xfecu64;
        let mut rnd = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10_000 {
            let lam = (rnd() - 0.5) * 40.0;
            let u = (rnd() - 0.5) * 40.0;
            let fs = conjugate(&f, u).unwrap();
            assert!(
                lam * u <= f.eval(lam) + fs + 1e-9,
                "lambda = {lam}, u = {u}"
            );
        }
    }

    #[test]
    fn conjugate_is_convex_in_u() {
        let f =
            ConjugableFunction::certified(|x| log_cosh(0.5 * x), f64::NEG_INFINITY, f64::INFINITY)
                .unwrap();
        let us: Vec<f64> = (0..40).map(|i| -0.48 + 0.024 * i as f64).collect();
        let vals: Vec<f64> = us.iter().map(|&u| conjugate(&f, u).unwrap()).collect();
        for i in 0..us.len() - 2 {
            let mid = vals[i + 1];
            let avg = 0.5 * (vals[i] + vals[i + 2]);
            assert!(mid <= avg + 1e-9, "convexity dip at u = {}", us[i + 1]);
        }
    }

    #[test]
    fn round_trip_square() {
        let f = ConjugableFunction::certified(|x| x * x, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let grid: Vec<f64> = (0..=80).map(|i| -10.0 + 0.25 * i as f64).collect();
        let dev = fenchel_moreau_check(&f, &grid).unwrap();
        assert!(dev <= 1e-6, "dev = {dev}");
    }

    #[test]
    fn round_trip_log_cosh_half() {
        let f =
            ConjugableFunction::certified(|x| log_cosh(0.5 * x), f64::NEG_INFINITY, f64::INFINITY)
                .unwrap();
        let grid: Vec<f64> = (0..=80).map(|i| -20.0 + 0.5 * i as f64).collect();
        let dev = fenchel_moreau_check(&f, &grid).unwrap();
        assert!(dev <= 1e-5, "dev = {dev}");
    }

    #[test]
    fn round_trip_abs() {
        let f = ConjugableFunction::certified(|x: f64| x.abs(), f64::NEG_INFINITY, f64::INFINITY)
            .unwrap();
        let grid: Vec<f64> = (0..=40).map(|i| -10.0 + 0.5 * i as f64).collect();
        let dev = fenchel_moreau_check(&f, &grid).unwrap();
        assert!(dev <= 1e-6, "dev = {dev}");
    }
}
