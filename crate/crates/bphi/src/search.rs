//! One-dimensional search primitives shared by the norm-fitting and
//! conjugation code: golden-section maximization and monotone bisection.

/// Inverse golden ratio, (sqrt(5) - 1) / 2.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Assumes `f` is unimodal (in particular, concave functions qualify).
/// Stops when the bracket width drops below `rel_tol * max(1, |a|, |b|)`
/// or after `max_iters` iterations. Returns `(x_max, f_max)`.
pub(crate) fn golden_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    rel_tol: f64,
    max_iters: usize,
) -> (f64, f64) {
    if a > b {
        std::mem::swap(&mut a, &mut b);
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iters {
        let scale = 1.0_f64.max(a.abs()).max(b.abs());
        if (b - a).abs() <= rel_tol * scale {
            break;
        }
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Bisection for the smallest `x` in `[lo, hi]` with `f(x) >= target`,
/// given `f` nondecreasing and `f(hi) >= target`.
///
/// Returns the upper end of the final bracket, so the result is always on
/// the "satisfies the inequality" side. Terminates at relative width
/// `rel_tol` or after `max_iters` halvings.
pub(crate) fn bisect_rising(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    target: f64,
    rel_tol: f64,
    max_iters: usize,
) -> f64 {
    debug_assert!(lo <= hi);
    for _ in 0..max_iters {
        let scale = 1.0_f64.max(lo.abs()).max(hi.abs());
        if hi - lo <= rel_tol * scale {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
