//! Ground-truth engines used to validate every bound in the crate: exact
//! binomial tail probabilities for homogeneous sums of centered indicators,
//! deterministic (counter-based) Monte Carlo for heterogeneous ones with
//! exact Clopper-Pearson intervals, and the mean-zero bounded-variable
//! envelope check `E e^{lambda X} <= cosh(lambda/2)` for `|X| <= 1/2`.
//!
//! The exact tail anchors at the dominant binomial term (computed with the
//! Stirling-error / binomial-deviance kernels, accurate to a few ulp even
//! for n = 1e7) and accumulates ratio-recursed neighbours with Kahan
//! compensation; the regularized incomplete beta (Lentz continued fraction)
//! provides an independent route for cross-checks and drives confidence
//! interval inversion.

use crate::specials::{log_cosh, log_mix_exp};
use crate::sum_tails::NormingFunction;

/// Errors from oracle queries.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    Domain(String),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for OracleError {}

pub const MAX_EXACT_N: u64 = 10_000_000;

/// Query for the exact upper tail of a homogeneous centered-indicator sum:
/// `P(K - n p > threshold)` with `K ~ Binomial(n, p)` (the threshold applies
/// to the unnormalized centered sum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactTailQuery {
    pub n: u64,
    pub p: f64,
    pub threshold: f64,
}

impl ExactTailQuery {
    pub fn new(n: u64, p: f64, threshold: f64) -> Result<Self, OracleError> {
        if n == 0 || n > MAX_EXACT_N {
            return Err(OracleError::Domain(format!(
                "n must lie in [1, {MAX_EXACT_N}], got {n}"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(OracleError::Domain(format!(
                "p must lie in (0, 1), got {p}"
            )));
        }
        if !threshold.is_finite() {
            return Err(OracleError::Domain(format!(
                "threshold must be finite, got {threshold}"
            )));
        }
        Ok(Self { n, p, threshold })
    }
}

// ---------------------------------------------------------------------------
// Stirling / deviance kernels for accurate binomial log-masses.
// ---------------------------------------------------------------------------

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;
const LN_2PI: f64 = 1.837_877_066_409_345_4;

/// Stirling series for `ln Gamma(x)`, `x >= 10`.
fn lgamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// `ln Gamma(x)` for `x > 0`: recurrence up to the Stirling regime.
pub(crate) fn lgamma(x: f64) -> f64 {
    assert!(x > 0.0, "lgamma needs a positive argument, got {x}");
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift -= y.ln();
        y += 1.0;
    }
    shift + lgamma_stirling(y)
}

/// `stirlerr(n) = ln n! - ((n + 1/2) ln n - n + ln sqrt(2 pi))`.
fn stirlerr(n: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if n < 16.0 {
        return lgamma(n + 1.0) - ((n + 0.5) * n.ln() - n + HALF_LN_2PI);
    }
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Binomial deviance `x ln(x / np) + np - x`, evaluated by series when
/// `x` is close to `np` so the cancellation never surfaces.
fn bd0(x: f64, np: f64) -> f64 {
    if (x - np).abs() < 0.1 * (x + np) {
        let v = (x - np) / (x + np);
        let mut s = (x - np) * v;
        let mut ej = 2.0 * x * v;
        let v2 = v * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let s1 = s + ej / (2.0 * j + 1.0);
            if s1 == s {
                return s1;
            }
            s = s1;
            j += 1.0;
        }
    }
    x * (x / np).ln() + np - x
}

/// `ln P(K = k)` for `K ~ Binomial(n, p)`, accurate to a few ulp across the
/// whole range.
fn ln_binom_pmf(n: u64, k: u64, p: f64) -> f64 {
    debug_assert!(k <= n);
    let q = 1.0 - p;
    let nf = n as f64;
    if k == 0 {
        return nf * (-p).ln_1p();
    }
    if k == n {
        return nf * p.ln();
    }
    let kf = k as f64;
    let nk = (n - k) as f64;
    let lc = stirlerr(nf) - stirlerr(kf) - stirlerr(nk) - bd0(kf, nf * p) - bd0(nk, nf * q);
    let lf = LN_2PI + kf.ln() + (-kf / nf).ln_1p();
    lc - 0.5 * lf
}

// ---------------------------------------------------------------------------
// Exact tail: anchored ratio summation with Kahan compensation.
// ---------------------------------------------------------------------------

struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn new(x: f64) -> Self {
        Self { sum: x, c: 0.0 }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// `ln P(K >= k)` by summing pmf ratios upward from the anchor `k`
/// (valid when `k` is at or above the mode, so terms decay).
fn ln_upper_sum(n: u64, k: u64, p: f64) -> f64 {
    let q = 1.0 - p;
    let anchor = ln_binom_pmf(n, k, p);
    let mut acc = Kahan::new(1.0);
    let mut term = 1.0_f64;
    let mut j = k;
    while j < n {
        // pmf(j + 1) / pmf(j)
        term *= (n - j) as f64 * p / ((j + 1) as f64 * q);
        acc.add(term);
        if term < acc.sum * 1e-18 {
            break;
        }
        j += 1;
    }
    anchor + acc.sum.ln()
}

/// `ln P(K <= k)` by summing pmf ratios downward from the anchor `k`
/// (valid when `k` is at or below the mode).
fn ln_lower_sum(n: u64, k: u64, p: f64) -> f64 {
    let q = 1.0 - p;
    let anchor = ln_binom_pmf(n, k, p);
    let mut acc = Kahan::new(1.0);
    let mut term = 1.0_f64;
    let mut j = k;
    while j > 0 {
        // pmf(j - 1) / pmf(j)
        term *= j as f64 * q / ((n - j + 1) as f64 * p);
        acc.add(term);
        if term < acc.sum * 1e-18 {
            break;
        }
        j -= 1;
    }
    anchor + acc.sum.ln()
}

/// `ln P(K - n p > threshold)`; `-inf` when the tail is empty.
pub fn exact_log_tail(query: &ExactTailQuery) -> Result<f64, OracleError> {
    let q = ExactTailQuery::new(query.n, query.p, query.threshold)?;
    let (n, p, t) = (q.n, q.p, q.threshold);
    let m = n as f64 * p + t;
    if m < 0.0 {
        return Ok(0.0); // ln 1: every outcome exceeds the threshold
    }
    let k_min_f = m.floor() + 1.0;
    if k_min_f > n as f64 {
        return Ok(f64::NEG_INFINITY);
    }
    let k_min = k_min_f as u64;
    let mode = ((n as f64 + 1.0) * p).floor().min(n as f64) as u64;
    if k_min > mode {
        Ok(ln_upper_sum(n, k_min, p))
    } else {
        // Complement route: the upper tail holds at least the mass above the
        // mode here, so 1 - P(K < k_min) suffers no cancellation.
        let ln_lower = ln_lower_sum(n, k_min - 1, p);
        Ok((-ln_lower.exp()).ln_1p())
    }
}

/// `P(K - n p > threshold)` for `K ~ Binomial(n, p)`: the exact upper tail
/// of the unnormalized centered sum. Underflows to 0 below ~1e-308.
pub fn exact_tail(query: &ExactTailQuery) -> Result<f64, OracleError> {
    Ok(exact_log_tail(query)?.exp())
}

// ---------------------------------------------------------------------------
// Regularized incomplete beta: the independent route.
// ---------------------------------------------------------------------------

/// Lentz continued fraction for the incomplete beta, per the classic
/// even/odd-step recurrence.
fn betacf(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 4000;
    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`, `x` in `[0, 1]`.
pub(crate) fn betai(a: f64, b: f64, x: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "betai needs positive shape parameters");
    assert!((0.0..=1.0).contains(&x), "betai needs x in [0, 1], got {x}");
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let ln_bt = a * x.ln() + b * (-x).ln_1p() + lgamma(a + b) - lgamma(a) - lgamma(b);
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_bt.exp() * betacf(a, b, x) / a
    } else {
        1.0 - ln_bt.exp() * betacf(b, a, 1.0 - x) / b
    }
}

/// `ln P(K >= k)` through the identity `P(K >= k) = I_p(k, n - k + 1)`,
/// with the prefactor folded into the accurate pmf kernel:
/// `I_p(k, n-k+1) = pmf(k) (1-p) cf`. Independent of the summation route;
/// requires `k` above the mode so the continued fraction converges directly.
pub(crate) fn ln_upper_tail_beta_route(n: u64, k: u64, p: f64) -> f64 {
    debug_assert!(k >= 1 && k <= n);
    let a = k as f64;
    let b = (n - k + 1) as f64;
    debug_assert!(
        p < (a + 1.0) / (a + b + 2.0),
        "continued fraction needs k above the mode"
    );
    ln_binom_pmf(n, k, p) + (1.0 - p).ln() + betacf(a, b, p).ln()
}

/// Smallest `x` with `I_x(a, b) >= target`, by bisection (the regularized
/// incomplete beta is increasing in `x`).
fn beta_inv(a: f64, b: f64, target: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&target));
    let mut lo = 0.0;
    let mut hi = 1.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if betai(a, b, mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Counter-based Monte Carlo.
// ---------------------------------------------------------------------------

/// A deterministic Monte Carlo tail estimate with exact 99% Clopper-Pearson
/// bounds. Two runs with the same inputs are bit-identical regardless of
/// worker count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationResult {
    /// `hits / samples`.
    pub estimate: f64,
    /// Lower 99% Clopper-Pearson bound.
    pub ci_lo: f64,
    /// Upper 99% Clopper-Pearson bound.
    pub ci_hi: f64,
    pub samples: u64,
    pub seed: u64,
    pub hits: u64,
}

fn splitmix_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-sample stream keyed by `(seed, sample index)`: sharding by index
/// ranges cannot change any draw.
struct SampleStream {
    state: u64,
}

impl SampleStream {
    fn new(seed: u64, index: u64) -> Self {
        let key = seed ^ splitmix_mix(index.wrapping_add(0x9e37_79b9_7f4a_7c15));
        Self {
            state: splitmix_mix(key),
        }
    }

    fn next_uniform(&mut self) -> f64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        (splitmix_mix(self.state) >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn count_hits(
    p_list: &[f64],
    sum_p: f64,
    w_value: f64,
    u: f64,
    seed: u64,
    range: std::ops::Range<u64>,
) -> u64 {
    let mut hits = 0u64;
    for s in range {
        let mut stream = SampleStream::new(seed, s);
        let mut successes = 0u64;
        for &p in p_list {
            if stream.next_uniform() < p {
                successes += 1;
            }
        }
        let value = (successes as f64 - sum_p) / w_value;
        if value > u {
            hits += 1;
        }
    }
    hits
}

/// Default worker count: available parallelism.
pub fn available_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Estimate `P((sum_i I_i - p_i) / w_value > u)` for independent indicators
/// with probabilities `p_list`, from `samples` draws keyed by `seed`.
///
/// Randomness is counter-based per sample index, so the result is
/// bit-identical for a fixed seed regardless of how the sample range is
/// sharded across workers.
pub fn simulate_tail(
    p_list: &[f64],
    w_value: f64,
    u: f64,
    samples: u64,
    seed: u64,
) -> Result<SimulationResult, OracleError> {
    simulate_tail_with_workers(p_list, w_value, u, samples, seed, available_workers())
}

/// [`simulate_tail`] with an explicit worker count.
pub fn simulate_tail_with_workers(
    p_list: &[f64],
    w_value: f64,
    u: f64,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<SimulationResult, OracleError> {
    if p_list.is_empty() {
        return Err(OracleError::Domain(
            "probability list must be nonempty".into(),
        ));
    }
    for &p in p_list {
        if !(p > 0.0 && p < 1.0) {
            return Err(OracleError::Domain(format!(
                "probabilities must lie in (0, 1), got {p}"
            )));
        }
    }
    if !(w_value > 0.0) {
        return Err(OracleError::Domain(format!(
            "w_value must be positive, got {w_value}"
        )));
    }
    if !u.is_finite() {
        return Err(OracleError::Domain(format!("u must be finite, got {u}")));
    }
    if samples < 10_000 {
        return Err(OracleError::Domain(format!(
            "at least 10000 samples required, got {samples}"
        )));
    }
    let sum_p: f64 = p_list.iter().sum();
    let workers = workers.max(1).min(samples as usize);

    let hits = if workers == 1 {
        count_hits(p_list, sum_p, w_value, u, seed, 0..samples)
    } else {
        let chunk = samples.div_ceil(workers as u64);
        std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(workers);
            for w in 0..workers as u64 {
                let start = w * chunk;
                let end = ((w + 1) * chunk).min(samples);
                if start >= end {
                    break;
                }
                handles.push(
                    scope.spawn(move || count_hits(p_list, sum_p, w_value, u, seed, start..end)),
                );
            }
            handles
                .into_iter()
                .map(|h| h.join().expect("simulation worker panicked"))
                .sum()
        })
    };

    let estimate = hits as f64 / samples as f64;
    let alpha = 0.01;
    let ci_lo = if hits == 0 {
        0.0
    } else {
        beta_inv(hits as f64, (samples - hits + 1) as f64, alpha / 2.0)
    };
    let ci_hi = if hits == samples {
        1.0
    } else {
        beta_inv(
            (hits + 1) as f64,
            (samples - hits) as f64,
            1.0 - alpha / 2.0,
        )
    };
    Ok(SimulationResult {
        estimate,
        ci_lo,
        ci_hi,
        samples,
        seed,
        hits,
    })
}

// ---------------------------------------------------------------------------
// Supremum of the exact tail over n.
// ---------------------------------------------------------------------------

/// Max over `n` in `[1, n_max]` of `P(K_n - n p > u w(n))` and its argmax:
/// the homogeneous lower witness for the tail functional's supremum over
/// summand counts. Scans a geometric grid (ratio 1.05) and exhaustively
/// refines +/-2 around the grid winner; `(0, 1)` when every tail is empty.
pub fn sup_tail_over_n(
    w: &NormingFunction,
    p: f64,
    u: f64,
    n_max: u64,
) -> Result<(f64, u64), OracleError> {
    if n_max == 0 || n_max > MAX_EXACT_N {
        return Err(OracleError::Domain(format!(
            "n_max must lie in [1, {MAX_EXACT_N}], got {n_max}"
        )));
    }
    let tail_at = |n: u64| -> Result<f64, OracleError> {
        let query = ExactTailQuery::new(n, p, u * w.evaluate(n as f64))?;
        exact_tail(&query)
    };
    let mut best = f64::NEG_INFINITY;
    let mut best_n = 1u64;
    let mut n = 1u64;
    while n <= n_max {
        let v = tail_at(n)?;
        if v > best {
            best = v;
            best_n = n;
        }
        n = ((n as f64 * 1.05).ceil() as u64).max(n + 1);
    }
    let lo = best_n.saturating_sub(2).max(1);
    let hi = best_n.saturating_add(2).min(n_max);
    for n in lo..=hi {
        let v = tail_at(n)?;
        if v > best {
            best = v;
            best_n = n;
        }
    }
    if best <= 0.0 {
        return Ok((0.0, 1));
    }
    Ok((best, best_n))
}

// ---------------------------------------------------------------------------
// Bounded mean-zero laws and their mgf envelope.
// ---------------------------------------------------------------------------

/// A finite mean-zero law supported inside `[-1/2, 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteLaw {
    atoms: Vec<(f64, f64)>,
}

impl FiniteLaw {
    /// Atoms are `(value, mass)` pairs: masses positive summing to 1 within
    /// 1e-12, values inside `[-1/2, 1/2]`, mean zero within 1e-12.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self, OracleError> {
        if atoms.is_empty() {
            return Err(OracleError::Domain("law needs at least one atom".into()));
        }
        let mut mass = 0.0;
        let mut mean = 0.0;
        for &(x, m) in &atoms {
            if !(m > 0.0) {
                return Err(OracleError::Domain(format!(
                    "atom masses must be positive, got {m}"
                )));
            }
            if x.abs() > 0.5 + 1e-12 {
                return Err(OracleError::Domain(format!(
                    "support must lie inside [-1/2, 1/2], got {x}"
                )));
            }
            mass += m;
            mean += m * x;
        }
        if (mass - 1.0).abs() > 1e-12 {
            return Err(OracleError::Domain(format!(
                "masses must sum to 1, got {mass}"
            )));
        }
        if mean.abs() > 1e-12 {
            return Err(OracleError::Domain(format!(
                "law must be mean zero, got mean {mean:e}"
            )));
        }
        Ok(Self { atoms })
    }

    /// The symmetric two-point law at +/- 1/2 (the envelope's equality case).
    pub fn rademacher_half() -> Self {
        Self {
            atoms: vec![(0.5, 0.5), (-0.5, 0.5)],
        }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn log_mgf(&self, lambda: f64) -> f64 {
        let terms: Vec<(f64, f64)> = self.atoms.iter().map(|&(x, m)| (lambda * x, m)).collect();
        log_mix_exp(&terms)
    }
}

/// Max over the grid of `ln E e^{lambda X} - ln cosh(lambda / 2)`: at most
/// ~0 (within rounding) for every mean-zero law on `[-1/2, 1/2]`, with
/// equality exactly on the symmetric two-point law at +/- 1/2.
pub fn bounded_variable_envelope_check(law: &FiniteLaw, lambda_grid: &[f64]) -> f64 {
    let mut worst = f64::NEG_INFINITY;
    for &lam in lambda_grid {
        let margin = law.log_mgf(lam) - log_cosh(0.5 * lam);
        if margin > worst {
            worst = margin;
        }
    }
    worst
}
