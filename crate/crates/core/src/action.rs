//! Action functionals over a space-time window, computed three ways: in
//! closed form (exact for piecewise-constant solutions, adaptive quadrature
//! inside rarefaction fans), as a time profile of the instantaneous rate,
//! and by midpoint-rule quadrature as an independent cross-check.
//!
//! The window is the box `x in (-l1, l1)`, `y in (-l2, l2)`, `t in
//! (0, t_end)`. No stored quantity depends on `x`, so its extent enters all
//! integrals as the factor `2 l1`.

use serde::Serialize;

use crate::eos::{self, EosParams};
use crate::error::{Error, Result};
use crate::quad;
use crate::riemann;
use crate::spacetime::{PiecewiseSolution, RegionPayload, RegionState, Slab};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActionWindow {
    pub l1: f64,
    pub l2: f64,
    pub t_end: f64,
}

impl ActionWindow {
    pub fn new(l1: f64, l2: f64, t_end: f64) -> Result<Self> {
        if !(l1 > 0.0 && l2 > 0.0 && t_end > 0.0) {
            return Err(Error::Domain(format!(
                "window extents must be positive, got l1 = {l1}, l2 = {l2}, t_end = {t_end}"
            )));
        }
        Ok(Self { l1, l2, t_end })
    }
}

/// Pointwise action density of a region state: kinetic minus potential.
/// The wild wedge carries its kinetic level `c1` in place of `|u|²`.
pub fn region_action_density(eos: EosParams, state: &RegionState) -> f64 {
    match state {
        RegionState::Classical(s) => eos::action_density(eos, s),
        RegionState::Wild { rho1, c1, .. } => {
            0.5 * rho1 * c1 - eos.k * rho1.powf(eos.gamma) / (eos.gamma - 1.0)
        }
    }
}

fn check_coverage(sol: &PiecewiseSolution, window: &ActionWindow) -> Result<()> {
    let end = sol.slabs.last().map(|s| s.t_end).unwrap_or(0.0);
    if window.t_end > end * (1.0 + 1e-12) {
        return Err(Error::Domain(format!(
            "window end {} exceeds the solution's final time {end}",
            window.t_end
        )));
    }
    Ok(())
}

/// Times in `(t_lo, t_hi)` at which some boundary of `slab` crosses
/// `y = -l2` or `y = +l2`, plus the interval ends, sorted and deduplicated.
fn slab_breakpoints(slab: &Slab, t_lo: f64, t_hi: f64, l2: f64) -> Vec<f64> {
    let mut cuts = vec![t_lo, t_hi];
    for b in &slab.boundaries {
        if b.line.speed == 0.0 {
            continue;
        }
        for target in [-l2, l2] {
            let t = b.line.t_anchor + (target - b.line.y_anchor) / b.line.speed;
            if t > t_lo && t < t_hi {
                cuts.push(t);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * t_hi.abs().max(1.0));
    cuts
}

/// y-extent of region `i` of the slab at time `t`, clipped to the window.
fn clipped_extent(slab: &Slab, i: usize, t: f64, l2: f64) -> (f64, f64) {
    let lo = if i == 0 {
        -l2
    } else {
        slab.boundaries[i - 1].line.y_at(t).clamp(-l2, l2)
    };
    let hi = if i == slab.boundaries.len() {
        l2
    } else {
        slab.boundaries[i].line.y_at(t).clamp(-l2, l2)
    };
    (lo, hi)
}

/// Action carried by a rarefaction region over `[t_lo, t_hi]`, per unit
/// length in x. The fan's clipping status is constant on the interval
/// because breakpoints include every edge crossing with the window sides.
#[allow(clippy::too_many_arguments)]
fn fan_region_action(
    eos: EosParams,
    payload: &RegionPayload,
    t_lo: f64,
    t_hi: f64,
    l2: f64,
    tol: &Tolerances,
) -> f64 {
    let RegionPayload::Rarefaction {
        family,
        center,
        wave,
    } = payload
    else {
        unreachable!("caller dispatches on the payload kind");
    };
    let (tc, yc) = *center;
    let (xi_lo, xi_hi) = (wave.kind.min_speed(), wave.kind.max_speed());
    let density = |xi: f64| {
        let state = riemann::rarefaction_interior(eos, *family, wave, xi)
            .expect("interior of a fan within its own speed range");
        eos::action_density(eos, &state)
    };

    let tm = 0.5 * (t_lo + t_hi);
    let dtm = tm - tc;
    if dtm <= 0.0 {
        return 0.0;
    }
    let (y_lo, y_hi) = (yc + xi_lo * dtm, yc + xi_hi * dtm);
    if y_lo >= l2 || y_hi <= -l2 {
        return 0.0;
    }
    let clipped = y_lo < -l2 || y_hi > l2;

    let span = (xi_hi - xi_lo).abs().max(1e-30);
    let inner_tol = tol.quadrature_rel * (density(0.5 * (xi_lo + xi_hi)).abs() * span).max(1.0);

    if !clipped {
        // Separable: the y-integral is (t - tc) times a fixed xi-integral.
        let i_xi = quad::integrate(density, xi_lo, xi_hi, inner_tol);
        return i_xi * 0.5 * ((t_hi - tc).powi(2) - (t_lo - tc).powi(2));
    }

    // Clipped: the active xi-range moves with time; integrate it directly.
    let slice = |t: f64| {
        let dt = t - tc;
        if dt <= 0.0 {
            return 0.0;
        }
        let a = xi_lo.max((-l2 - yc) / dt);
        let b = xi_hi.min((l2 - yc) / dt);
        if a >= b {
            return 0.0;
        }
        dt * quad::integrate(density, a, b, inner_tol)
    };
    let outer_tol = tol.quadrature_rel * (slice(tm).abs() * (t_hi - t_lo)).max(1.0);
    quad::integrate(slice, t_lo, t_hi, outer_tol)
}

/// Action of one slab restricted to `[t_lo, t_hi]`, per unit length in x.
fn slab_action(
    eos: EosParams,
    slab: &Slab,
    t_lo: f64,
    t_hi: f64,
    l2: f64,
    tol: &Tolerances,
) -> f64 {
    let cuts = slab_breakpoints(slab, t_lo, t_hi, l2);
    let mut total = 0.0;
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        for (i, payload) in slab.regions.iter().enumerate() {
            match payload {
                RegionPayload::Constant(state) => {
                    // Clipped widths are affine between breakpoints, so the
                    // trapezoid rule is exact here.
                    let (lo_a, hi_a) = clipped_extent(slab, i, a, l2);
                    let (lo_b, hi_b) = clipped_extent(slab, i, b, l2);
                    let mean_width = 0.5 * ((hi_a - lo_a) + (hi_b - lo_b));
                    total += region_action_density(eos, state) * mean_width * (b - a);
                }
                RegionPayload::Rarefaction { .. } => {
                    total += fan_region_action(eos, payload, a, b, l2, tol);
                }
            }
        }
    }
    total
}

/// Exact action over the window (adaptive quadrature only inside
/// rarefaction fans).
pub fn action_closed_form(
    sol: &PiecewiseSolution,
    window: &ActionWindow,
    tol: &Tolerances,
) -> Result<f64> {
    check_coverage(sol, window)?;
    let mut total = 0.0;
    for slab in &sol.slabs {
        let t_lo = slab.t_start.max(0.0);
        let t_hi = slab.t_end.min(window.t_end);
        if t_hi <= t_lo {
            continue;
        }
        total += slab_action(sol.eos, slab, t_lo, t_hi, window.l2, tol);
    }
    Ok(2.0 * window.l1 * total)
}

fn quadrature_row(
    sol: &PiecewiseSolution,
    window: &ActionWindow,
    grid: (usize, usize),
    i: usize,
) -> Result<f64> {
    let (nt, ny) = grid;
    let dt = window.t_end / nt as f64;
    let dy = 2.0 * window.l2 / ny as f64;
    let t = (i as f64 + 0.5) * dt;
    let mut row = 0.0;
    for j in 0..ny {
        let y = -window.l2 + (j as f64 + 0.5) * dy;
        let state = crate::spacetime::evaluate(sol, t, y)?;
        row += region_action_density(sol.eos, &state);
    }
    Ok(row * dt * dy)
}

fn finish_quadrature(window: &ActionWindow, rows: Vec<f64>) -> f64 {
    // Sum in index order so the result does not depend on thread timing.
    2.0 * window.l1 * rows.into_iter().sum::<f64>()
}

/// Midpoint-rule cross-check on an `(nt, ny)` grid. First-order accurate in
/// the grid spacing for solutions with jumps; used to validate the closed
/// form, never the other way round.
pub fn action_quadrature(
    sol: &PiecewiseSolution,
    window: &ActionWindow,
    grid: (usize, usize),
) -> Result<f64> {
    check_coverage(sol, window)?;
    if grid.0 == 0 || grid.1 == 0 {
        return Err(Error::Domain("quadrature grid must be nonempty".into()));
    }
    #[cfg(feature = "parallel")]
    let rows: Result<Vec<f64>> = {
        use rayon::prelude::*;
        (0..grid.0)
            .into_par_iter()
            .map(|i| quadrature_row(sol, window, grid, i))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Result<Vec<f64>> = (0..grid.0)
        .map(|i| quadrature_row(sol, window, grid, i))
        .collect();
    Ok(finish_quadrature(window, rows?))
}

/// Sequential twin of [`action_quadrature`], kept unconditionally for
/// benchmarks and determinism checks.
pub fn action_quadrature_seq(
    sol: &PiecewiseSolution,
    window: &ActionWindow,
    grid: (usize, usize),
) -> Result<f64> {
    check_coverage(sol, window)?;
    if grid.0 == 0 || grid.1 == 0 {
        return Err(Error::Domain("quadrature grid must be nonempty".into()));
    }
    let rows: Result<Vec<f64>> = (0..grid.0)
        .map(|i| quadrature_row(sol, window, grid, i))
        .collect();
    Ok(finish_quadrature(window, rows?))
}

/// Instantaneous action rate of one slab at time `t`, per unit length in x.
/// Fails if the window clips a rarefaction fan, in which case the rate is
/// not affine between breakpoints.
fn slice_rate(eos: EosParams, slab: &Slab, t: f64, l2: f64, tol: &Tolerances) -> Result<f64> {
    let mut rate = 0.0;
    for (i, payload) in slab.regions.iter().enumerate() {
        match payload {
            RegionPayload::Constant(state) => {
                let (lo, hi) = clipped_extent(slab, i, t, l2);
                rate += region_action_density(eos, state) * (hi - lo);
            }
            RegionPayload::Rarefaction {
                family,
                center,
                wave,
            } => {
                let (tc, yc) = *center;
                let dt = t - tc;
                if dt <= 0.0 {
                    continue;
                }
                let (xi_lo, xi_hi) = (wave.kind.min_speed(), wave.kind.max_speed());
                let (y_lo, y_hi) = (yc + xi_lo * dt, yc + xi_hi * dt);
                if y_lo >= l2 || y_hi <= -l2 {
                    continue;
                }
                if y_lo < -l2 || y_hi > l2 {
                    return Err(Error::Domain(format!(
                        "window with half-width {l2} clips a rarefaction fan at t = {t}; \
                         the action rate is not piecewise affine"
                    )));
                }
                let density = |xi: f64| {
                    let state = riemann::rarefaction_interior(eos, *family, wave, xi)
                        .expect("interior of a fan within its own speed range");
                    eos::action_density(eos, &state)
                };
                let span = (xi_hi - xi_lo).abs().max(1e-30);
                let inner_tol =
                    tol.quadrature_rel * (density(0.5 * (xi_lo + xi_hi)).abs() * span).max(1.0);
                rate += dt * quad::integrate(density, xi_lo, xi_hi, inner_tol);
            }
        }
    }
    Ok(rate)
}

/// One affine piece of the action rate `A(t)`: the rate moves linearly from
/// `rate0` at `t0` to `rate1` at `t1`. `A` jumps between consecutive
/// segments exactly at slab seams.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSegment {
    pub t0: f64,
    pub t1: f64,
    pub rate0: f64,
    pub rate1: f64,
}

/// Exact piecewise-affine profile of the action rate over the window.
pub fn action_profile(
    sol: &PiecewiseSolution,
    window: &ActionWindow,
    tol: &Tolerances,
) -> Result<Vec<ProfileSegment>> {
    check_coverage(sol, window)?;
    let factor = 2.0 * window.l1;
    let mut segments = Vec::new();
    for slab in &sol.slabs {
        let t_lo = slab.t_start.max(0.0);
        let t_hi = slab.t_end.min(window.t_end);
        if t_hi <= t_lo {
            continue;
        }
        let cuts = slab_breakpoints(slab, t_lo, t_hi, window.l2);
        for pair in cuts.windows(2) {
            segments.push(ProfileSegment {
                t0: pair[0],
                t1: pair[1],
                rate0: factor * slice_rate(sol.eos, slab, pair[0], window.l2, tol)?,
                rate1: factor * slice_rate(sol.eos, slab, pair[1], window.l2, tol)?,
            });
        }
    }
    Ok(segments)
}

/// One quadratic piece of the cumulative action: on `[t0, t1]` the value is
/// `value0 + rate0 (t - t0) + curvature (t - t0)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CumulativeSegment {
    pub t0: f64,
    pub t1: f64,
    pub value0: f64,
    pub rate0: f64,
    pub curvature: f64,
}

impl CumulativeSegment {
    pub fn value_at(&self, t: f64) -> f64 {
        let s = t - self.t0;
        self.value0 + self.rate0 * s + self.curvature * s * s
    }
}

/// Integrate a rate profile into the piecewise-quadratic cumulative action.
pub fn cumulative_action(profile: &[ProfileSegment]) -> Vec<CumulativeSegment> {
    let mut segments = Vec::with_capacity(profile.len());
    let mut value = 0.0;
    for p in profile {
        let dt = p.t1 - p.t0;
        let curvature = if dt > 0.0 {
            0.5 * (p.rate1 - p.rate0) / dt
        } else {
            0.0
        };
        let segment = CumulativeSegment {
            t0: p.t0,
            t1: p.t1,
            value0: value,
            rate0: p.rate0,
            curvature,
        };
        value = segment.value_at(p.t1);
        segments.push(segment);
    }
    segments
}

fn cumulative_value_at(segments: &[CumulativeSegment], t: f64) -> f64 {
    for s in segments {
        if t <= s.t1 {
            return s.value_at(t);
        }
    }
    segments.last().map(|s| s.value_at(t)).unwrap_or(0.0)
}

fn segment_containing(segments: &[CumulativeSegment], t: f64) -> &CumulativeSegment {
    for s in segments {
        if t < s.t1 {
            return s;
        }
    }
    segments.last().expect("profiles are nonempty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    FirstLower,
    SecondLower,
    Tie,
}

/// Outcome of an action comparison over a common window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub action_first: f64,
    pub action_second: f64,
    /// `action_first - action_second`.
    pub difference: f64,
    pub verdict: Verdict,
    /// Times in the open window interval at which the cumulative actions
    /// cross, sorted.
    pub crossing_times: Vec<f64>,
}

/// Compare the cumulative actions of two solutions over the same window:
/// totals, verdict, and every crossing of the running totals.
pub fn compare(
    first: &PiecewiseSolution,
    second: &PiecewiseSolution,
    window: &ActionWindow,
    tol: &Tolerances,
) -> Result<Comparison> {
    let profile_first = action_profile(first, window, tol)?;
    let profile_second = action_profile(second, window, tol)?;
    let cum_first = cumulative_action(&profile_first);
    let cum_second = cumulative_action(&profile_second);

    let action_first = cumulative_value_at(&cum_first, window.t_end);
    let action_second = cumulative_value_at(&cum_second, window.t_end);
    let difference = action_first - action_second;
    let scale = action_first.abs().max(action_second.abs()).max(1.0);
    let verdict = if difference.abs() <= tol.residual_abs * scale {
        Verdict::Tie
    } else if difference < 0.0 {
        Verdict::FirstLower
    } else {
        Verdict::SecondLower
    };

    // The running difference is quadratic between merged breakpoints; find
    // its roots piece by piece in closed form.
    let mut cuts: Vec<f64> = cum_first
        .iter()
        .chain(cum_second.iter())
        .flat_map(|s| [s.t0, s.t1])
        .filter(|&t| t >= 0.0 && t <= window.t_end)
        .collect();
    cuts.push(0.0);
    cuts.push(window.t_end);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * window.t_end.max(1.0));

    let mut crossings: Vec<f64> = Vec::new();
    for pair in cuts.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        let len = q - p;
        if len <= 0.0 {
            continue;
        }
        let sa = segment_containing(&cum_first, 0.5 * (p + q));
        let sb = segment_containing(&cum_second, 0.5 * (p + q));
        // Difference coefficients around p: d0 + d1 s + d2 s².
        let d0 = sa.value_at(p) - sb.value_at(p);
        let d1 = (sa.rate0 + 2.0 * sa.curvature * (p - sa.t0))
            - (sb.rate0 + 2.0 * sb.curvature * (p - sb.t0));
        let d2 = sa.curvature - sb.curvature;

        let value_scale = scale.max(d1.abs() * len).max(d2.abs() * len * len);
        if d0.abs() <= 1e-13 * value_scale
            && d1.abs() * len <= 1e-13 * value_scale
            && d2.abs() * len * len <= 1e-13 * value_scale
        {
            // The difference vanishes identically here; no isolated roots.
            continue;
        }

        let mut roots: Vec<f64> = Vec::new();
        if d2.abs() * len * len <= 1e-15 * value_scale {
            if d1 != 0.0 {
                roots.push(-d0 / d1);
            }
        } else {
            let disc = d1 * d1 - 4.0 * d2 * d0;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                let qq = -0.5 * (d1 + d1.signum() * sq);
                if qq != 0.0 {
                    roots.push(qq / d2);
                    roots.push(d0 / qq);
                } else {
                    // d1 == 0 and disc == 0: double root at the vertex.
                    roots.push(0.0);
                }
            }
        }
        let pad = 1e-12 * window.t_end.max(1.0);
        for s in roots {
            if s >= -pad && s <= len + pad {
                crossings.push(p + s);
            }
        }
    }

    crossings.sort_by(f64::total_cmp);
    crossings.dedup_by(|a, b| (*a - *b).abs() <= 1e-10 * window.t_end.max(1.0));
    crossings.retain(|&t| t > 1e-10 * window.t_end && t < window.t_end * (1.0 - 1e-10));

    Ok(Comparison {
        action_first,
        action_second,
        difference,
        verdict,
        crossing_times: crossings,
    })
}

/// Everything a caller typically wants to publish about one solution's
/// action over a window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActionReport {
    pub window: ActionWindow,
    pub value: f64,
    /// `value / t_end²`; constant under the self-similar window scaling
    /// `(l2, t_end) -> (k l2, k t_end)`.
    pub coefficient: f64,
    /// `None` when the window clips a rarefaction fan.
    pub profile: Option<Vec<ProfileSegment>>,
    pub cumulative: Option<Vec<CumulativeSegment>>,
}

pub fn action_report(
    sol: &PiecewiseSolution,
    window: &ActionWindow,
    tol: &Tolerances,
) -> Result<ActionReport> {
    let value = action_closed_form(sol, window, tol)?;
    let (profile, cumulative) = match action_profile(sol, window, tol) {
        Ok(p) => {
            let c = cumulative_action(&p);
            (Some(p), Some(c))
        }
        Err(_) => (None, None),
    };
    Ok(ActionReport {
        window: *window,
        value,
        coefficient: value / (window.t_end * window.t_end),
        profile,
        cumulative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::{EosParams, State};
    use crate::fixture;
    use crate::riemann::RiemannData;
    use crate::spacetime;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn assert_rel(value: f64, expected: f64, tol: f64) {
        let scale = expected.abs().max(1.0);
        assert!(
            (value - expected).abs() <= tol * scale,
            "value {value} vs expected {expected}"
        );
    }

    /// Standard window for a glued solution stopped at `t0`: the wedge
    /// interfaces reach `y = ±l2` exactly at the stopping time.
    fn standard_window(t0: f64, t_end: f64) -> ActionWindow {
        let fx = fixture::counterexample();
        ActionWindow::new(1.0, fx.sub.mu1 * t0, t_end).unwrap()
    }

    fn glued(t0: f64, t_end: f64) -> spacetime::PiecewiseSolution {
        let fx = fixture::counterexample();
        spacetime::build_glued_solution(&fx.data, &fx.sub, t0, t_end, &tol()).unwrap()
    }

    fn one_dimensional(t_end: f64) -> spacetime::PiecewiseSolution {
        let fx = fixture::counterexample();
        spacetime::build_1d_solution(&fx.data, t_end, &tol()).unwrap()
    }

    #[test]
    fn region_densities() {
        let fx = fixture::counterexample();
        let wild = RegionState::Wild {
            rho1: fx.sub.rho1,
            u1: 0.0,
            v1: 0.0,
            c1: fx.sub.c1,
        };
        assert_rel(
            region_action_density(fx.eos, &wild),
            fx.action_density_wild(),
            1e-13,
        );
        let outer = RegionState::Classical(fx.data.left);
        assert_rel(
            region_action_density(fx.eos, &outer),
            fx.action_density_outer(),
            1e-13,
        );
        let rest = RegionState::Classical(State::new(3.0, 0.0, 0.0).unwrap());
        assert_rel(region_action_density(fx.eos, &rest), -9.0, 1e-15);
        // Classical middle state: all potential, no kinetic energy.
        let middle = RegionState::Classical(State::new(fx.rho_m, 0.0, 0.0).unwrap());
        assert_rel(
            region_action_density(fx.eos, &middle),
            -fx.rho_m * fx.rho_m,
            1e-13,
        );
    }

    #[test]
    fn closed_form_matches_the_reference_coefficients() {
        let fx = fixture::counterexample();
        let window = standard_window(0.5, 1.0);
        let a_glued = action_closed_form(&glued(0.5, 1.0), &window, &tol()).unwrap();
        assert_rel(a_glued, fx.k_glued(), 1e-11);
        let a_1d = action_closed_form(&one_dimensional(1.0), &window, &tol()).unwrap();
        assert_rel(a_1d, fx.k_one_dimensional(), 1e-10);
        assert_rel(a_glued - a_1d, fx.k_difference(), 1e-7);
        assert!(a_glued < a_1d);
    }

    #[test]
    fn action_scales_with_the_window() {
        // Doubling (t0, t_end, l2) together scales the action by 4.
        let small =
            action_closed_form(&glued(0.5, 1.0), &standard_window(0.5, 1.0), &tol()).unwrap();
        let large =
            action_closed_form(&glued(1.0, 2.0), &standard_window(1.0, 2.0), &tol()).unwrap();
        assert_rel(large, 4.0 * small, 1e-12);
    }

    #[test]
    fn profile_is_affine_with_one_jump() {
        let fx = fixture::counterexample();
        let window = standard_window(0.5, 1.0);
        let profile = action_profile(&glued(0.5, 1.0), &window, &tol()).unwrap();
        assert_eq!(profile.len(), 2);

        // Rate at t -> 0+: the window holds only outer fluid.
        assert_rel(
            profile[0].rate0,
            2.0 * 2.0 * window.l2 * fx.action_density_outer(),
            1e-12,
        );
        // Single downward jump at the stopping time.
        let jump = profile[1].rate0 - profile[0].rate1;
        let expected = -2.0
            * (fx.sub.mu1 - fx.sub.mu0)
            * 0.5
            * (fx.action_density_wild() - fx.action_density_wedge_rest());
        assert_rel(jump, expected, 1e-11);
        assert!(jump < 0.0);

        // The 1-D profile is a single affine segment with the predicted
        // slope.
        let profile = action_profile(&one_dimensional(1.0), &window, &tol()).unwrap();
        assert_eq!(profile.len(), 1);
        let a_m = -fx.rho_m * fx.rho_m;
        let slope = 4.0 * fx.sigma * (a_m - fx.action_density_outer());
        assert_rel(profile[0].rate1 - profile[0].rate0, slope, 1e-10);
    }

    #[test]
    fn cumulative_action_chains_to_the_closed_form() {
        let window = standard_window(0.5, 1.0);
        for sol in [glued(0.5, 1.0), one_dimensional(1.0)] {
            let profile = action_profile(&sol, &window, &tol()).unwrap();
            let cumulative = cumulative_action(&profile);
            let total = cumulative_value_at(&cumulative, window.t_end);
            let direct = action_closed_form(&sol, &window, &tol()).unwrap();
            assert_rel(total, direct, 1e-12);
            // Continuity of the running value across segment joints.
            for pair in cumulative.windows(2) {
                assert_rel(pair[0].value_at(pair[0].t1), pair[1].value0, 1e-12);
            }
            assert_eq!(cumulative[0].value0, 0.0);
        }
    }

    #[test]
    fn comparison_crosses_once_after_the_collapse() {
        let fx = fixture::counterexample();
        let window = standard_window(0.5, 1.0);
        let cmp = compare(&glued(0.5, 1.0), &one_dimensional(1.0), &window, &tol()).unwrap();
        assert_eq!(cmp.verdict, Verdict::FirstLower);
        assert_rel(cmp.difference, fx.k_difference(), 1e-7);
        assert_eq!(cmp.crossing_times.len(), 1, "{:?}", cmp.crossing_times);
        // Reference crossing computed with 60-digit arithmetic.
        assert_rel(cmp.crossing_times[0], 0.7019084813178085, 1e-9);
        assert!(cmp.crossing_times[0] > 0.5 && cmp.crossing_times[0] < 1.0);

        // Before the collapse the glued solution is strictly above.
        let early = compare(
            &glued(0.5, 1.0),
            &one_dimensional(1.0),
            &ActionWindow::new(1.0, window.l2, 0.45).unwrap(),
            &tol(),
        )
        .unwrap();
        assert_eq!(early.verdict, Verdict::SecondLower);
        assert!(early.crossing_times.is_empty());
    }

    #[test]
    fn comparison_of_a_solution_with_itself_is_a_tie() {
        let window = standard_window(0.5, 1.0);
        let a = one_dimensional(1.0);
        let b = one_dimensional(1.0);
        let cmp = compare(&a, &b, &window, &tol()).unwrap();
        assert_eq!(cmp.verdict, Verdict::Tie);
        assert!(cmp.crossing_times.is_empty(), "{:?}", cmp.crossing_times);
        assert_eq!(cmp.difference, 0.0);
    }

    #[test]
    fn difference_is_window_independent() {
        // Widening the y-window adds the same outer contribution to both
        // solutions; the difference and the crossing stay put.
        let base = standard_window(0.5, 1.0);
        let wide = ActionWindow::new(1.0, base.l2 * 1.7, 1.0).unwrap();
        let narrow_cmp = compare(&glued(0.5, 1.0), &one_dimensional(1.0), &base, &tol()).unwrap();
        let wide_cmp = compare(&glued(0.5, 1.0), &one_dimensional(1.0), &wide, &tol()).unwrap();
        assert_rel(narrow_cmp.difference, wide_cmp.difference, 1e-9);
        assert_rel(
            narrow_cmp.crossing_times[0],
            wide_cmp.crossing_times[0],
            1e-9,
        );
    }

    #[test]
    fn quadrature_converges_to_the_closed_form() {
        let window = standard_window(0.5, 1.0);
        let sol = glued(0.5, 1.0);
        let exact = action_closed_form(&sol, &window, &tol()).unwrap();
        let coarse = action_quadrature(&sol, &window, (151, 151)).unwrap();
        let fine = action_quadrature(&sol, &window, (601, 601)).unwrap();
        assert!((fine - exact).abs() < (coarse - exact).abs());
        assert_rel(fine, exact, 5e-3);
    }

    #[test]
    fn parallel_and_sequential_quadrature_agree_exactly() {
        let window = standard_window(0.5, 1.0);
        let sol = glued(0.5, 1.0);
        let par = action_quadrature(&sol, &window, (97, 83)).unwrap();
        let seq = action_quadrature_seq(&sol, &window, (97, 83)).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn rarefaction_fans_integrate_exactly() {
        // Rarefaction-bearing solution: closed form against quadrature.
        let eos = EosParams::quadratic();
        let data = RiemannData {
            left: State::new(3.0, 0.5, 0.0).unwrap(),
            right: State::new(1.0, 0.0, 0.0).unwrap(),
            eos,
        };
        let sol = spacetime::build_1d_solution(&data, 1.0, &tol()).unwrap();
        let window = ActionWindow::new(1.0, 5.0, 1.0).unwrap();
        let exact = action_closed_form(&sol, &window, &tol()).unwrap();
        let approx = action_quadrature(&sol, &window, (801, 801)).unwrap();
        assert_rel(approx, exact, 1e-2);

        // A window that cuts through the fan exercises the moving-limit
        // integration path.
        let clipped_window = ActionWindow::new(1.0, 1.0, 1.0).unwrap();
        let exact = action_closed_form(&sol, &clipped_window, &tol()).unwrap();
        let approx = action_quadrature(&sol, &clipped_window, (801, 801)).unwrap();
        assert_rel(approx, exact, 1e-2);

        // The rate profile legitimately refuses clipped fans.
        assert!(action_profile(&sol, &clipped_window, &tol()).is_err());
        assert!(action_profile(&sol, &window, &tol()).is_ok());
    }

    #[test]
    fn report_bundles_consistent_numbers() {
        let fx = fixture::counterexample();
        let window = standard_window(0.5, 1.0);
        let report = action_report(&glued(0.5, 1.0), &window, &tol()).unwrap();
        assert_rel(report.value, fx.k_glued(), 1e-11);
        assert_rel(report.coefficient, fx.k_glued(), 1e-11);
        assert!(report.profile.is_some() && report.cumulative.is_some());
    }
}
