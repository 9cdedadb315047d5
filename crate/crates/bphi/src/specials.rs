//! Numerically stable elementary functions and the small analytic
//! inequalities the rest of the crate leans on: a branch-safe `acosh`,
//! stable `ln cosh`, weighted log-sum-exp, and the piecewise quadratic
//! majorant of `ln cosh` with its constant `e + 1/e - 2`.

use std::f64::consts::{E, LN_2};

/// Constant of the quadratic envelope `ln cosh x <= C x^2 / 2` on `|x| < 1`,
/// `C = e + 1/e - 2`.
pub const C_QUAD: f64 = E + 1.0 / E - 2.0;

/// Constants of the log-cosh envelope, bundled for reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeConstants {
    /// Quadratic envelope constant, `e + 1/e - 2`.
    pub c_quad: f64,
}

impl EnvelopeConstants {
    pub const fn standard() -> Self {
        Self { c_quad: C_QUAD }
    }
}

impl Default for EnvelopeConstants {
    fn default() -> Self {
        Self::standard()
    }
}

/// Errors from domain violations in the special functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialsError {
    /// Argument outside the function's domain.
    Domain(String),
}

impl std::fmt::Display for SpecialsError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecialsError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for SpecialsError {}

/// Inverse hyperbolic cosine, `ln(z + sqrt(z^2 - 1))`, non-negative branch.
///
/// Arguments in `[1 - 1e-12, 1)` are clamped to 1; anything smaller (or NaN)
/// is a domain error. Relative error stays below 1e-12 across `[1, 1e300]`:
/// the crossover at `z - 1 = 1e-8` switches to the expansion
/// `sqrt(2(z-1)) * (1 - (z-1)/12)`, and the log form factors `z^2 - 1` as
/// `(z-1)(z+1)` so the subtraction near 1 stays exact.
pub fn acosh_stable(z: f64) -> Result<f64, SpecialsError> {
    if z.is_nan() {
        return Err(SpecialsError::Domain("acosh argument is NaN".into()));
    }
    if z < 1.0 - 1e-12 {
        return Err(SpecialsError::Domain(format!("acosh argument {z} < 1")));
    }
    if z <= 1.0 {
        return Ok(0.0);
    }
    let eps = z - 1.0;
    if eps < 1e-8 {
        Ok((2.0 * eps).sqrt() * (1.0 - eps / 12.0))
    } else if z <= 1e150 {
        Ok((eps + (eps * (z + 1.0)).sqrt()).ln_1p())
    } else {
        // acosh z ~ ln(2z); the dropped 1/(4z^2) correction is far below 1 ulp.
        Ok(LN_2 + z.ln())
    }
}

/// `acosh(exp(log_z))` without losing precision near `log_z = 0` and
/// without overflowing for large `log_z`. Requires `log_z >= 0`.
///
/// Tiny negative inputs (rounding noise down to -1e-12) are clamped to 0.
pub fn acosh_exp(log_z: f64) -> f64 {
    assert!(!log_z.is_nan(), "acosh_exp argument is NaN");
    if log_z <= 0.0 {
        assert!(log_z >= -1e-12, "acosh_exp argument {log_z} < 0");
        return 0.0;
    }
    if log_z > 30.0 {
        return log_z + (1.0 + (1.0 - (-2.0 * log_z).exp()).sqrt()).ln();
    }
    // exp_m1 keeps z - 1 fully accurate where exp() would round it away.
    let eps = log_z.exp_m1();
    if eps < 1e-8 {
        (2.0 * eps).sqrt() * (1.0 - eps / 12.0)
    } else {
        (eps + (eps * (eps + 2.0)).sqrt()).ln_1p()
    }
}

/// `ln cosh x`, stable for any finite `x` (no overflow up to |x| = 1e308).
///
/// Uses `ln(1 + 2 sinh^2(x/2))` below 1 and `|x| - ln 2 + ln(1 + e^{-2|x|})`
/// above, keeping the relative error within a few ulp everywhere.
pub fn log_cosh(x: f64) -> f64 {
    assert!(x.is_finite(), "log_cosh argument must be finite, got {x}");
    let y = x.abs();
    if y < 1.0 {
        let s = (0.5 * y).sinh();
        (2.0 * s * s).ln_1p()
    } else {
        y - LN_2 + (-2.0 * y).exp().ln_1p()
    }
}

/// `ln(wa e^a + wb e^b)` for weights in (0,1) summing to 1, overflow-free.
pub fn log_sum_exp(a: f64, wa: f64, b: f64, wb: f64) -> f64 {
    assert!(
        a.is_finite() && b.is_finite(),
        "log_sum_exp exponents must be finite"
    );
    assert!(
        wa > 0.0 && wa < 1.0 && wb > 0.0 && wb < 1.0,
        "log_sum_exp weights must lie in (0, 1)"
    );
    assert!(
        (wa + wb - 1.0).abs() <= 1e-12,
        "log_sum_exp weights must sum to 1, got {}",
        wa + wb
    );
    let m = a.max(b);
    m + (wa * (a - m).exp() + wb * (b - m).exp()).ln()
}

/// `ln(sum_i w_i e^{a_i})` over a finite list of `(exponent, weight)` terms
/// with positive weights. The max exponent is factored out.
pub fn log_mix_exp(terms: &[(f64, f64)]) -> f64 {
    assert!(!terms.is_empty(), "log_mix_exp needs at least one term");
    let mut m = f64::NEG_INFINITY;
    for &(a, w) in terms {
        assert!(a.is_finite(), "log_mix_exp exponent must be finite");
        assert!(w > 0.0, "log_mix_exp weights must be positive");
        m = m.max(a);
    }
    let sum: f64 = terms.iter().map(|&(a, w)| w * (a - m).exp()).sum();
    m + sum.ln()
}

/// Truth of `sinh mu <= 2 mu cosh mu` for `mu > 0`, evaluated as
/// `tanh mu <= 2 mu` so large arguments cannot overflow.
pub fn check_sinh_envelope(mu: f64) -> bool {
    assert!(
        mu.is_finite() && mu > 0.0,
        "check_sinh_envelope needs mu > 0, got {mu}"
    );
    mu.tanh() <= 2.0 * mu
}

/// Piecewise majorant of `ln cosh`: `C x^2 / 2` on `|x| < 1`, `|x|` beyond.
pub fn log_cosh_envelope(x: f64) -> f64 {
    assert!(
        x.is_finite(),
        "log_cosh_envelope argument must be finite, got {x}"
    );
    let y = x.abs();
    if y < 1.0 {
        C_QUAD * y * y / 2.0
    } else {
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn splitmix64(state: &mut u64) -> u64 {
        *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = *state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn uniform(state: &mut u64) -> f64 {
        (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn c_quad_is_in_stated_window() {
        let c = EnvelopeConstants::standard().c_quad;
        assert!(c > 1.086 && c < 1.087, "C = {c}");
        assert_eq!(c, C_QUAD);
    }

    #[test]
    fn acosh_at_one_is_zero() {
        assert_eq!(acosh_stable(1.0).unwrap(), 0.0);
    }

    #[test]
    fn acosh_inverts_cosh_three() {
        let z = 3.0_f64.cosh(); // ~10.067662
        let y = acosh_stable(z).unwrap();
        assert!((y - 3.0).abs() < 1e-12, "y = {y}");
    }

    #[test]
    fn acosh_near_one_matches_independent_route() {
        // Independent oracle: cosh y = 1 + eps  <=>  y = 2 asinh(sqrt(eps/2)),
        // and std asinh is accurate for tiny arguments. The oracle must see
        // the eps actually stored in z (forming 1 + 5e-9 quantizes it).
        let z = 1.0 + 5e-9;
        let stored_eps = z - 1.0;
        let expected = 2.0 * (stored_eps / 2.0_f64).sqrt().asinh();
        let got = acosh_stable(z).unwrap();
        assert!(
            (got - expected).abs() / expected < 1e-12,
            "got {got}, expected {expected}"
        );
        // Leading term sqrt(1e-8) = 1e-4, approached from below (the -eps/12
        // correction), within the ~2e-8 quantization of eps itself.
        assert!((got - 1e-4).abs() / 1e-4 < 5e-8);
        assert!(got < 1e-4);
    }

    #[test]
    fn acosh_rejects_out_of_domain() {
        assert!(acosh_stable(0.5).is_err());
        assert!(acosh_stable(1.0 - 1e-9).is_err());
        assert!(acosh_stable(f64::NAN).is_err());
        // Within clamp tolerance: fine.
        assert_eq!(acosh_stable(1.0 - 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn acosh_round_trip_across_magnitudes() {
        // cosh(acosh z) = z to 1e-10 relative on a log-uniform grid of [1, 1e10].
        let mut state = 0x5eed_0001u64;
        for _ in 0..100_000 {
            let t = uniform(&mut state) * 10.0;
            let z = 10f64.powf(t).max(1.0);
            let y = acosh_stable(z).unwrap();
            let back = y.cosh();
            assert!((back - z).abs() / z <= 1e-10, "z = {z}, back = {back}");
        }
    }

    #[test]
    fn acosh_huge_arguments_follow_log_asymptote() {
        let y = acosh_stable(1e300).unwrap();
        let expected = LN_2 + 1e300_f64.ln();
        assert!((y - expected).abs() / expected < 1e-15);
        // Continuity across the 1e150 branch switch: acosh z shifts by
        // exactly ln(z2/z1) in this regime.
        let a = acosh_stable(1e150 * (1.0 - 1e-9)).unwrap();
        let b = acosh_stable(1e150 * (1.0 + 1e-9)).unwrap();
        assert!((b - a - 2e-9).abs() < 1e-12, "jump = {}", b - a);
    }

    #[test]
    fn acosh_exp_matches_direct_form() {
        for &l in &[0.0f64, 1e-6, 0.5, 3.0, 29.0] {
            let direct = acosh_stable(l.exp()).unwrap();
            let viaexp = acosh_exp(l);
            assert!((direct - viaexp).abs() <= 1e-9 * (1.0 + direct), "l = {l}");
        }
        // Tiny log argument, checked against the independent asinh route
        // cosh y = 1 + eps  <=>  y = 2 asinh(sqrt(eps / 2)).
        let y = acosh_exp(1e-9);
        let expected = 2.0 * ((1e-9f64).exp_m1() / 2.0).sqrt().asinh();
        assert!(
            (y - expected).abs() / expected < 1e-12,
            "y = {y}, expected {expected}"
        );
        // Beyond exp range: acosh(e^L) = L + ln 2 - tiny.
        let y = acosh_exp(1000.0);
        assert!((y - (1000.0 + LN_2)).abs() < 1e-12);
        // Clamp of rounding noise.
        assert_eq!(acosh_exp(-1e-13), 0.0);
    }

    #[test]
    fn log_cosh_at_zero_is_zero() {
        assert_eq!(log_cosh(0.0), 0.0);
    }

    #[test]
    fn log_cosh_large_argument_asymptote() {
        let got = log_cosh(1000.0);
        assert!((got - (1000.0 - LN_2)).abs() < 1e-10);
        // No overflow at the top of the range.
        assert!(log_cosh(1e308).is_finite());
    }

    #[test]
    fn log_cosh_half_matches_std_route() {
        // Independent route: cosh then ln via std, accurate at this scale.
        let expected = 0.5_f64.cosh().ln(); // 0.12011450695827751
        let got = log_cosh(0.5);
        assert!(
            (got - expected).abs() / expected < 1e-14,
            "got {got}, expected {expected}"
        );
    }

    #[test]
    fn log_cosh_even_and_below_abs() {
        let mut state = 0x5eed_0002u64;
        for _ in 0..100_000 {
            let x = (uniform(&mut state) - 0.5) * 1400.0;
            assert_eq!(log_cosh(x), log_cosh(-x));
            assert!(log_cosh(x) <= x.abs());
        }
    }

    #[test]
    #[should_panic(expected = "finite")]
    fn log_cosh_rejects_nan() {
        log_cosh(f64::NAN);
    }

    #[test]
    fn log_sum_exp_balanced_zero() {
        assert_eq!(log_sum_exp(0.0, 0.5, 0.0, 0.5), 0.0);
    }

    #[test]
    fn log_sum_exp_wide_spread() {
        // ln(0.1 e^18 + 0.9 e^-2), evaluated directly in the factored form.
        let expected = 18.0 + (0.1 + 0.9 * (-20.0_f64).exp()).ln(); // ~15.6974
        let got = log_sum_exp(18.0, 0.1, -2.0, 0.9);
        assert!((got - expected).abs() < 1e-13, "got {got}");
        assert!((got - 15.697).abs() < 1e-3);
    }

    #[test]
    fn log_sum_exp_symmetric_is_log_cosh() {
        for &x in &[0.1, 0.5, 1.0, 3.0, 20.0, 300.0] {
            let lse = log_sum_exp(x, 0.5, -x, 0.5);
            let lc = log_cosh(x);
            assert!(
                (lse - lc).abs() <= 1e-14 * (1.0 + lc.abs()) + 1e-15,
                "x = {x}: {lse} vs {lc}"
            );
        }
    }

    #[test]
    #[should_panic(expected = "sum to 1")]
    fn log_sum_exp_rejects_bad_weights() {
        log_sum_exp(0.0, 0.5, 0.0, 0.6);
    }

    #[test]
    fn log_mix_exp_matches_two_point_form() {
        let got = log_mix_exp(&[(18.0, 0.1), (-2.0, 0.9)]);
        let expected = log_sum_exp(18.0, 0.1, -2.0, 0.9);
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn sinh_envelope_examples() {
        assert!(check_sinh_envelope(1.0));
        assert!(check_sinh_envelope(1e-8));
        assert!(check_sinh_envelope(50.0));
    }

    #[test]
    fn sinh_envelope_holds_on_full_range() {
        let mut state = 0x5eed_0003u64;
        for _ in 0..100_000 {
            let mu = uniform(&mut state) * 700.0;
            if mu > 0.0 {
                assert!(check_sinh_envelope(mu), "mu = {mu}");
            }
        }
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(log_cosh_envelope(0.0), 0.0);
        let at_half = log_cosh_envelope(0.5);
        assert!((at_half - C_QUAD * 0.125).abs() < 1e-15);
        assert!(at_half >= log_cosh(0.5));
        assert_eq!(log_cosh_envelope(2.0), 2.0);
        assert!(2.0 >= log_cosh(2.0));
    }

    #[test]
    fn envelope_dominates_log_cosh_everywhere_sampled() {
        let mut state = 0x5eed_0004u64;
        for _ in 0..100_000 {
            let x = (uniform(&mut state) - 0.5) * 2000.0;
            assert!(log_cosh_envelope(x) >= log_cosh(x), "x = {x}");
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn envelope_dominates(x in -700.0f64..700.0) {
                prop_assert!(log_cosh_envelope(x) >= log_cosh(x));
            }

            #[test]
            fn acosh_round_trip(t in 0.0f64..10.0) {
                let z = 10f64.powf(t).max(1.0);
                let y = acosh_stable(z).unwrap();
                prop_assert!((y.cosh() - z).abs() / z <= 1e-10);
            }
        }
    }
}
