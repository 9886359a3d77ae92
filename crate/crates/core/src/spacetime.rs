//! Piecewise space-time descriptions of the competing solutions.
//!
//! A solution is a stack of time slabs. Within a slab the half-plane is cut
//! by straight boundaries into regions that carry either a constant state,
//! a self-similar rarefaction interior, or the wild wedge. Two builders are
//! provided: the classical self-similar solution of a Riemann problem, and
//! the glued solution that runs a wild wedge up to a stopping time and then
//! continues with the two Riemann fans emitted where the interfaces stop.

use serde::Serialize;

use crate::eos::{EosParams, State};
use crate::error::{Error, Result};
use crate::riemann::{self, Family, RiemannData, Wave, WaveFan, WaveKind};
use crate::subsolution::{self, FanSubsolution};
use crate::tolerance::Tolerances;

/// Straight line `y = y_anchor + speed * (t - t_anchor)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub t_anchor: f64,
    pub y_anchor: f64,
    pub speed: f64,
}

impl Line {
    pub fn y_at(&self, t: f64) -> f64 {
        self.y_anchor + self.speed * (t - self.t_anchor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryKind {
    Shock,
    Contact,
    RarefactionEdge,
    SubsolutionInterface,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Boundary {
    pub line: Line,
    pub kind: BoundaryKind,
}

/// What a region carries pointwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RegionState {
    Classical(State),
    /// Wedge with prescribed density, mean velocity and kinetic level; it
    /// has no pointwise velocity field, only these averages.
    Wild {
        rho1: f64,
        u1: f64,
        v1: f64,
        c1: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RegionPayload {
    Constant(RegionState),
    /// Self-similar rarefaction interior; `wave` keeps the anchoring edge
    /// states of the originating fan.
    Rarefaction {
        family: Family,
        center: (f64, f64),
        wave: Wave,
    },
}

/// Horizontal time slab cut by `boundaries` into `boundaries.len() + 1`
/// regions, listed left to right.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Slab {
    pub t_start: f64,
    pub t_end: f64,
    pub boundaries: Vec<Boundary>,
    pub regions: Vec<RegionPayload>,
}

/// A full solution on `0 <= t <= t_end`, valid strictly below `horizon`
/// (the first wave interaction not resolved by the construction).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseSolution {
    pub eos: EosParams,
    pub slabs: Vec<Slab>,
    pub horizon: f64,
    /// Spatial period in the ignorable direction for genuinely
    /// two-dimensional solutions; `None` when the solution is planar.
    pub x_period: Option<f64>,
}

fn slab_from_fan(fan: &WaveFan, t_start: f64, t_end: f64) -> Slab {
    let (tc, yc) = fan.center;
    let line = |speed: f64| Line {
        t_anchor: tc,
        y_anchor: yc,
        speed,
    };
    let mut boundaries = Vec::new();
    let mut regions = vec![RegionPayload::Constant(RegionState::Classical(
        fan.states[0],
    ))];
    for (i, wave) in fan.waves.iter().enumerate() {
        match wave.kind {
            WaveKind::Shock { speed } => {
                boundaries.push(Boundary {
                    line: line(speed),
                    kind: BoundaryKind::Shock,
                });
            }
            WaveKind::Contact { speed } => {
                boundaries.push(Boundary {
                    line: line(speed),
                    kind: BoundaryKind::Contact,
                });
            }
            WaveKind::Rarefaction { family, head, tail } => {
                let (lo, hi) = (head.min(tail), head.max(tail));
                boundaries.push(Boundary {
                    line: line(lo),
                    kind: BoundaryKind::RarefactionEdge,
                });
                regions.push(RegionPayload::Rarefaction {
                    family,
                    center: fan.center,
                    wave: *wave,
                });
                boundaries.push(Boundary {
                    line: line(hi),
                    kind: BoundaryKind::RarefactionEdge,
                });
            }
        }
        regions.push(RegionPayload::Constant(RegionState::Classical(
            fan.states[i + 1],
        )));
    }
    Slab {
        t_start,
        t_end,
        boundaries,
        regions,
    }
}

/// Earliest time after `slab.t_start` at which two adjacent boundaries
/// cross, or infinity. Boundaries are ordered at `t_start`, so the first
/// crossing anywhere is a crossing of neighbours.
pub fn interaction_time(slab: &Slab) -> f64 {
    let mut earliest = f64::INFINITY;
    for pair in slab.boundaries.windows(2) {
        let (a, b) = (&pair[0].line, &pair[1].line);
        if a.speed > b.speed {
            let gap = b.y_at(slab.t_start) - a.y_at(slab.t_start);
            let t = slab.t_start + gap / (a.speed - b.speed);
            if t > slab.t_start && t < earliest {
                earliest = t;
            }
        }
    }
    earliest
}

/// Classical self-similar solution of `data`, valid for all time.
pub fn build_1d_solution(
    data: &RiemannData,
    t_end: f64,
    tol: &Tolerances,
) -> Result<PiecewiseSolution> {
    if !(t_end > 0.0) {
        return Err(Error::Domain(format!(
            "final time must be positive, got {t_end}"
        )));
    }
    let fan = riemann::solve_riemann(data, tol)?;
    let slab = slab_from_fan(&fan, 0.0, t_end);
    Ok(PiecewiseSolution {
        eos: data.eos,
        slabs: vec![slab],
        horizon: f64::INFINITY,
        x_period: None,
    })
}

/// Spatial period assigned to glued solutions. The wedge microstructure is
/// periodic in the ignorable direction; the period is a free normalisation
/// and every reported quantity is per unit length in that direction.
pub const GLUED_X_PERIOD: f64 = 2.0;

/// Glued solution: wild wedge on `[0, t0]`, then the two classical fans
/// emitted where the interfaces stop, up to `t_end`.
///
/// Fails if the subsolution is infeasible for `data`, or if `t_end` reaches
/// the first interaction of the seam fans.
pub fn build_glued_solution(
    data: &RiemannData,
    sub: &FanSubsolution,
    t0: f64,
    t_end: f64,
    tol: &Tolerances,
) -> Result<PiecewiseSolution> {
    if !(t0 > 0.0 && t_end > t0) {
        return Err(Error::Domain(format!(
            "need 0 < t0 < t_end, got t0 = {t0}, t_end = {t_end}"
        )));
    }
    let report = subsolution::check_feasibility(sub, data, tol);
    if !report.is_feasible() {
        return Err(Error::Infeasible(report.violations.join("; ")));
    }

    let origin_line = |speed: f64| Line {
        t_anchor: 0.0,
        y_anchor: 0.0,
        speed,
    };
    let wedge_slab = Slab {
        t_start: 0.0,
        t_end: t0,
        boundaries: vec![
            Boundary {
                line: origin_line(sub.mu0),
                kind: BoundaryKind::SubsolutionInterface,
            },
            Boundary {
                line: origin_line(sub.mu1),
                kind: BoundaryKind::SubsolutionInterface,
            },
        ],
        regions: vec![
            RegionPayload::Constant(RegionState::Classical(data.left)),
            RegionPayload::Constant(RegionState::Wild {
                rho1: sub.rho1,
                u1: sub.u1,
                v1: sub.v1,
                c1: sub.c1,
            }),
            RegionPayload::Constant(RegionState::Classical(data.right)),
        ],
    };

    // At t0 the wedge comes to rest at its mean state and each stopped
    // interface poses a classical Riemann problem.
    let rest = State::new(sub.rho1, sub.u1, sub.v1)?;
    let left_fan = riemann::solve_riemann_at(
        &RiemannData {
            left: data.left,
            right: rest,
            eos: data.eos,
        },
        (t0, sub.mu0 * t0),
        tol,
    )?;
    let right_fan = riemann::solve_riemann_at(
        &RiemannData {
            left: rest,
            right: data.right,
            eos: data.eos,
        },
        (t0, sub.mu1 * t0),
        tol,
    )?;

    let left_slab = slab_from_fan(&left_fan, t0, t_end);
    let right_slab = slab_from_fan(&right_fan, t0, t_end);
    debug_assert_eq!(
        left_slab.regions.last(),
        Some(&right_slab.regions[0]),
        "seam fans must share the wedge rest state"
    );
    let mut boundaries = left_slab.boundaries;
    boundaries.extend(right_slab.boundaries);
    let mut regions = left_slab.regions;
    regions.extend(right_slab.regions.into_iter().skip(1));
    let seam_slab = Slab {
        t_start: t0,
        t_end,
        boundaries,
        regions,
    };

    let horizon = interaction_time(&seam_slab);
    if t_end > horizon {
        return Err(Error::Horizon {
            horizon,
            requested: t_end,
            detail: "seam fans interact".into(),
        });
    }

    Ok(PiecewiseSolution {
        eos: data.eos,
        slabs: vec![wedge_slab, seam_slab],
        horizon,
        x_period: Some(GLUED_X_PERIOD),
    })
}

/// Index of the slab containing time `t`: slabs own `[t_start, t_end)` and
/// the last slab also owns its final time.
fn slab_index(sol: &PiecewiseSolution, t: f64) -> Result<usize> {
    let first = sol
        .slabs
        .first()
        .ok_or_else(|| Error::Domain("solution has no slabs".into()))?;
    if !(t > first.t_start) {
        return Err(Error::Domain(format!(
            "time {t} is not inside the solution's time range"
        )));
    }
    for (i, slab) in sol.slabs.iter().enumerate() {
        if t < slab.t_end {
            return Ok(i);
        }
    }
    let last = sol.slabs.len() - 1;
    if t == sol.slabs[last].t_end {
        return Ok(last);
    }
    Err(Error::Domain(format!(
        "time {t} exceeds the solution's final time {}",
        sol.slabs[last].t_end
    )))
}

/// Point evaluation. Points on a boundary belong to the region on its
/// right; times on a slab seam belong to the later slab.
pub fn evaluate(sol: &PiecewiseSolution, t: f64, y: f64) -> Result<RegionState> {
    let slab = &sol.slabs[slab_index(sol, t)?];
    let index = slab
        .boundaries
        .iter()
        .take_while(|b| b.line.y_at(t) <= y)
        .count();
    match &slab.regions[index] {
        RegionPayload::Constant(state) => Ok(*state),
        RegionPayload::Rarefaction {
            family,
            center,
            wave,
        } => {
            let xi = (y - center.1) / (t - center.0);
            let state = riemann::rarefaction_interior(sol.eos, *family, wave, xi)?;
            Ok(RegionState::Classical(state))
        }
    }
}

/// Largest |y| reached by any boundary of any of the solutions up to
/// `t_end`; useful for choosing plotting extents.
pub fn outer_extent(sols: &[&PiecewiseSolution], t_end: f64) -> f64 {
    let mut extent: f64 = 0.0;
    for sol in sols {
        for slab in &sol.slabs {
            let hi = slab.t_end.min(t_end);
            let times = [slab.t_start, hi];
            for b in &slab.boundaries {
                for t in times {
                    extent = extent.max(b.line.y_at(t).abs());
                }
            }
        }
    }
    extent
}
