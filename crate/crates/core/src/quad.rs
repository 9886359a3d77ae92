//! Adaptive Simpson quadrature for smooth one-dimensional integrands.
//!
//! Used for rarefaction-fan integrals and as an independent oracle in tests.
//! Discontinuous space-time integrands go through the midpoint tensor rule in
//! [`crate::action`] instead.

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` (scaled by the
/// running estimate). Handles `a > b` by antisymmetry.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a > b {
        return -integrate(f, b, a, tol);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    // 15 = 2^4 − 1: Richardson factor for Simpson's fourth-order error.
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    let half_tol = 0.5 * tol;
    adaptive(f, a, m, fa, flm, fm, left, half_tol, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, half_tol, depth - 1)
}
