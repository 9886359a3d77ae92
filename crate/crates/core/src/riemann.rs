//! Exact solver for the planar Riemann problem of the barotropic Euler
//! system.
//!
//! All waves move in the `y` direction; the tangential velocity `u` rides
//! along as a passively advected quantity and can only jump across the
//! contact. Reduced to `(ρ, v)`, the system has two acoustic families with
//! eigenvalues `v − c` and `v + c`. The middle state is the root of a
//! strictly decreasing scalar function combining the two wave curves, so a
//! bracketed bisection plus Newton polish nails it to full precision.

use serde::{Deserialize, Serialize};

use crate::eos::{self, EosParams, State};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Two-state initial data separated by a planar interface at `y = const`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannData {
    pub left: State,
    pub right: State,
    pub eos: EosParams,
}

/// Acoustic wave family: `One` rides `v − c`, `Three` rides `v + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    One,
    Three,
}

/// Which branch of a wave curve connects a middle state to its side state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WaveBranch {
    Shock,
    Rarefaction,
    /// Degenerate wave of vanishing strength (densities coincide).
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WaveKind {
    Shock {
        speed: f64,
    },
    /// `head <= tail` are the leftmost/rightmost edge speeds of the fan.
    Rarefaction {
        family: Family,
        head: f64,
        tail: f64,
    },
    Contact {
        speed: f64,
    },
}

impl WaveKind {
    /// Leftmost characteristic speed of the wave.
    pub fn min_speed(&self) -> f64 {
        match *self {
            WaveKind::Shock { speed } | WaveKind::Contact { speed } => speed,
            WaveKind::Rarefaction { head, .. } => head,
        }
    }

    /// Rightmost characteristic speed of the wave.
    pub fn max_speed(&self) -> f64 {
        match *self {
            WaveKind::Shock { speed } | WaveKind::Contact { speed } => speed,
            WaveKind::Rarefaction { tail, .. } => tail,
        }
    }
}

/// One wave of a fan together with the constant states flanking it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Wave {
    pub kind: WaveKind,
    pub left: State,
    pub right: State,
}

/// Self-similar solution of a planar Riemann problem, centered at a
/// space-time point. `states` lists the constant states left to right;
/// `waves` the separating waves, so `states.len() == waves.len() + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaveFan {
    pub center: (f64, f64),
    pub states: Vec<State>,
    pub waves: Vec<Wave>,
    pub eos: EosParams,
}

/// Root of the middle-state equation plus the branch each family selected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MiddleState {
    pub rho: f64,
    pub v: f64,
    pub branch1: WaveBranch,
    pub branch3: WaveBranch,
    /// Value of the wave-curve mismatch at the returned root.
    pub residual: f64,
}

/// `|Δv|` across an admissible shock between two densities:
/// `sqrt((ρ_b − ρ_a)(p(ρ_b) − p(ρ_a)) / (ρ_a ρ_b))`.
pub fn hugoniot_velocity_jump(eos: EosParams, rho_from: f64, rho_to: f64) -> Result<f64> {
    if rho_from == rho_to {
        return Err(Error::Degenerate(format!(
            "velocity jump undefined for equal densities {rho_from}"
        )));
    }
    let p_from = eos::pressure(eos, rho_from)?;
    let p_to = eos::pressure(eos, rho_to)?;
    Ok(((rho_to - rho_from) * (p_to - p_from) / (rho_to * rho_from)).sqrt())
}

/// Velocity change along a rarefaction curve from `rho_from` to `rho_to`:
/// `∫ c(r)/r dr = 2 sqrt(Kγ)/(γ−1) · (r^((γ−1)/2))` evaluated between the
/// densities. Negative when the density drops.
pub fn rarefaction_velocity_change(eos: EosParams, rho_from: f64, rho_to: f64) -> Result<f64> {
    Ok(rarefaction_invariant(eos, rho_to)? - rarefaction_invariant(eos, rho_from)?)
}

/// `h(ρ) = 2 c(ρ) / (γ − 1)`, the antiderivative of `c(r)/r`.
fn rarefaction_invariant(eos: EosParams, rho: f64) -> Result<f64> {
    Ok(2.0 * eos::sound_speed(eos, rho)? / (eos.gamma - 1.0))
}

/// Velocity decrease across the wave of either family connecting a middle
/// density `rho` to the side density `rho_side`: shock branch for
/// compression, rarefaction branch otherwise. Continuously differentiable
/// across the branch switch.
fn wave_strength(eos: EosParams, rho: f64, rho_side: f64) -> Result<f64> {
    if rho > rho_side {
        hugoniot_velocity_jump(eos, rho_side, rho)
    } else if rho < rho_side {
        rarefaction_velocity_change(eos, rho_side, rho)
    } else {
        Ok(0.0)
    }
}

/// Derivative of [`wave_strength`] in its first argument.
fn wave_strength_slope(eos: EosParams, rho: f64, rho_side: f64) -> Result<f64> {
    if rho > rho_side {
        let p = eos::pressure(eos, rho)?;
        let p_side = eos::pressure(eos, rho_side)?;
        let num = (rho - rho_side) * (p - p_side);
        let den = rho * rho_side;
        let phi = (num / den).sqrt();
        if phi == 0.0 {
            return Ok(eos::sound_speed(eos, rho)? / rho);
        }
        let dp = eos.k * eos.gamma * rho.powf(eos.gamma - 1.0);
        let num_slope = (p - p_side) + (rho - rho_side) * dp;
        Ok((num_slope * den - num * rho_side) / (2.0 * den * den * phi))
    } else {
        Ok(eos::sound_speed(eos, rho)? / rho)
    }
}

/// Mismatch between the two wave curves at trial middle density `rho`:
/// strictly decreasing, with the middle state at its root.
fn curve_mismatch(data: &RiemannData, rho: f64) -> Result<f64> {
    Ok(data.left.v
        - data.right.v
        - wave_strength(data.eos, rho, data.left.rho)?
        - wave_strength(data.eos, rho, data.right.rho)?)
}

/// Solve for the middle density and normal velocity of the fan.
///
/// Bracketed bisection to width `root_width · max(1, ρ)` followed by three
/// Newton polish steps; the bracket is grown by doubling when the root lies
/// above both data densities.
pub fn solve_middle_density(data: &RiemannData, tol: &Tolerances) -> Result<MiddleState> {
    let (l, r) = (data.left, data.right);
    if l.rho == r.rho && l.v == r.v {
        return Ok(MiddleState {
            rho: l.rho,
            v: l.v,
            branch1: WaveBranch::Absent,
            branch3: WaveBranch::Absent,
            residual: 0.0,
        });
    }

    // Vacuum check: the mismatch at rho → 0+ is the total rarefaction budget
    // minus the velocity separation; a non-positive value means the curves
    // only meet at vacuum.
    let budget = rarefaction_invariant(data.eos, l.rho)? + rarefaction_invariant(data.eos, r.rho)?;
    let separation = r.v - l.v;
    if budget - separation <= 0.0 {
        return Err(Error::Vacuum { separation, budget });
    }

    // Bracket the root of the decreasing mismatch: lo with g(lo) > 0,
    // hi with g(hi) <= 0.
    let mut lo;
    let mut hi;
    let rho_max = l.rho.max(r.rho);
    let rho_min = l.rho.min(r.rho);
    if curve_mismatch(data, rho_max)? > 0.0 {
        lo = rho_max;
        hi = 2.0 * rho_max;
        let mut grow = 0;
        while curve_mismatch(data, hi)? > 0.0 {
            lo = hi;
            hi *= 2.0;
            grow += 1;
            if grow > 200 {
                return Err(Error::Solver(format!(
                    "middle-density bracket failed to close below {hi}"
                )));
            }
        }
    } else {
        hi = rho_max;
        lo = rho_min;
        let mut shrink = 0;
        while curve_mismatch(data, lo)? <= 0.0 {
            hi = lo;
            lo *= 0.5;
            shrink += 1;
            if shrink > 2000 {
                return Err(Error::Solver(format!(
                    "middle-density bracket failed to open above {lo}"
                )));
            }
        }
    }

    while hi - lo > tol.root_width * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket at floating-point resolution
        }
        if curve_mismatch(data, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut rho_m = 0.5 * (lo + hi);
    for _ in 0..3 {
        let g = curve_mismatch(data, rho_m)?;
        let slope = -wave_strength_slope(data.eos, rho_m, l.rho)?
            - wave_strength_slope(data.eos, rho_m, r.rho)?;
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = rho_m - g / slope;
        if next > 0.0 && next.is_finite() {
            rho_m = next;
        }
    }

    let residual = curve_mismatch(data, rho_m)?;
    let v_from_left = l.v - wave_strength(data.eos, rho_m, l.rho)?;
    let v_from_right = r.v + wave_strength(data.eos, rho_m, r.rho)?;
    let branch = |rho_side: f64| {
        if (rho_m - rho_side).abs() <= 1e-14 * rho_side.max(1.0) {
            WaveBranch::Absent
        } else if rho_m > rho_side {
            WaveBranch::Shock
        } else {
            WaveBranch::Rarefaction
        }
    };
    Ok(MiddleState {
        rho: rho_m,
        v: 0.5 * (v_from_left + v_from_right),
        branch1: branch(l.rho),
        branch3: branch(r.rho),
        residual,
    })
}

/// Discontinuity speed from the mass jump condition:
/// `s = (ρ_l v_l − ρ_r v_r) / (ρ_l − ρ_r)`.
pub fn shock_speed(left: &State, right: &State) -> Result<f64> {
    if left.rho == right.rho {
        return Err(Error::Degenerate(
            "equal densities carry no mass jump; use a contact".to_string(),
        ));
    }
    Ok((left.rho * left.v - right.rho * right.v) / (left.rho - right.rho))
}

/// Solve the Riemann problem into a wave fan centered at the origin.
pub fn solve_riemann(data: &RiemannData, tol: &Tolerances) -> Result<WaveFan> {
    solve_riemann_at(data, (0.0, 0.0), tol)
}

/// Solve the Riemann problem into a wave fan centered at `(t0, y0)`.
pub fn solve_riemann_at(
    data: &RiemannData,
    center: (f64, f64),
    tol: &Tolerances,
) -> Result<WaveFan> {
    let eos = data.eos;
    let mid = solve_middle_density(data, tol)?;

    // When one side's wave is absent, the root coincides with that side
    // exactly; snapping removes the last bits of solver jitter so the
    // outermost states equal the data.
    let (rho_mid, v_mid) = match (mid.branch1, mid.branch3) {
        (WaveBranch::Absent, _) => (data.left.rho, data.left.v),
        (_, WaveBranch::Absent) => (data.right.rho, data.right.v),
        _ => (mid.rho, mid.v),
    };

    let mut states = vec![data.left];
    let mut waves = Vec::new();

    // 1-family wave between left and (rho_mid, u_l, v_mid).
    if mid.branch1 != WaveBranch::Absent {
        let inner = State {
            rho: rho_mid,
            u: data.left.u,
            v: v_mid,
        };
        let kind = match mid.branch1 {
            WaveBranch::Shock => WaveKind::Shock {
                speed: shock_speed(&data.left, &inner)?,
            },
            WaveBranch::Rarefaction => WaveKind::Rarefaction {
                family: Family::One,
                head: data.left.v - eos::sound_speed(eos, data.left.rho)?,
                tail: v_mid - eos::sound_speed(eos, rho_mid)?,
            },
            WaveBranch::Absent => unreachable!(),
        };
        waves.push(Wave {
            kind,
            left: data.left,
            right: inner,
        });
        states.push(inner);
    }

    // Contact carrying the tangential jump, moving with the middle velocity.
    if data.left.u != data.right.u {
        let prev = *states.last().expect("states never empty");
        let inner = State {
            u: data.right.u,
            ..prev
        };
        waves.push(Wave {
            kind: WaveKind::Contact { speed: v_mid },
            left: prev,
            right: inner,
        });
        states.push(inner);
    }

    // 3-family wave between (rho_mid, u_r, v_mid) and right.
    if mid.branch3 != WaveBranch::Absent {
        let left_of_wave = *states.last().expect("states never empty");
        let kind = match mid.branch3 {
            WaveBranch::Shock => WaveKind::Shock {
                speed: shock_speed(&left_of_wave, &data.right)?,
            },
            WaveBranch::Rarefaction => WaveKind::Rarefaction {
                family: Family::Three,
                head: v_mid + eos::sound_speed(eos, rho_mid)?,
                tail: data.right.v + eos::sound_speed(eos, data.right.rho)?,
            },
            WaveBranch::Absent => unreachable!(),
        };
        waves.push(Wave {
            kind,
            left: left_of_wave,
            right: data.right,
        });
        states.push(data.right);
    }

    // Lax ordering: each wave's span must end before the next begins.
    for pair in waves.windows(2) {
        if pair[0].kind.max_speed() > pair[1].kind.min_speed() {
            return Err(Error::Solver(format!(
                "wave speeds out of order: {:?} then {:?}",
                pair[0].kind, pair[1].kind
            )));
        }
    }

    Ok(WaveFan {
        center,
        states,
        waves,
        eos,
    })
}

/// Evaluate the fan at a space-time point strictly later than its center.
/// Points exactly on a wave edge resolve to the right of it.
pub fn sample(fan: &WaveFan, t: f64, y: f64) -> Result<State> {
    let (t0, y0) = fan.center;
    if !(t > t0) {
        return Err(Error::Domain(format!(
            "sample time {t} must exceed the fan center time {t0}"
        )));
    }
    let xi = (y - y0) / (t - t0);
    let mut current = fan.states[0];
    for wave in &fan.waves {
        match wave.kind {
            WaveKind::Shock { speed } | WaveKind::Contact { speed } => {
                if xi < speed {
                    return Ok(current);
                }
                current = wave.right;
            }
            WaveKind::Rarefaction { family, head, tail } => {
                if xi < head {
                    return Ok(current);
                }
                if xi < tail {
                    return rarefaction_interior(fan.eos, family, wave, xi);
                }
                current = wave.right;
            }
        }
    }
    Ok(current)
}

/// State inside a rarefaction fan at similarity coordinate `xi`, from the
/// characteristic condition `ξ = v ∓ c` and the constant Riemann invariant
/// of the family.
pub(crate) fn rarefaction_interior(
    eos: EosParams,
    family: Family,
    wave: &Wave,
    xi: f64,
) -> Result<State> {
    let gamma = eos.gamma;
    let (c, v, u) = match family {
        Family::One => {
            let anchor = wave.left;
            let c_a = eos::sound_speed(eos, anchor.rho)?;
            let c = (2.0 * c_a + (gamma - 1.0) * (anchor.v - xi)) / (gamma + 1.0);
            (c, xi + c, anchor.u)
        }
        Family::Three => {
            let anchor = wave.right;
            let c_a = eos::sound_speed(eos, anchor.rho)?;
            let c = (2.0 * c_a + (gamma - 1.0) * (xi - anchor.v)) / (gamma + 1.0);
            (c, xi - c, anchor.u)
        }
    };
    let rho = (c * c / (eos.k * gamma)).powf(1.0 / (gamma - 1.0));
    Ok(State { rho, u, v })
}

/// Jump-condition residuals of a discontinuity at speed `s`:
/// `s[ρ] − [ρv]`, `s[ρu] − [ρuv]`, `s[ρv] − [ρv² + p]`, with
/// `[q] = q_left − q_right`.
pub fn check_rh(eos: EosParams, speed: f64, left: &State, right: &State) -> [f64; 3] {
    let p_l = eos.k * left.rho.powf(eos.gamma);
    let p_r = eos.k * right.rho.powf(eos.gamma);
    [
        speed * (left.rho - right.rho) - (left.rho * left.v - right.rho * right.v),
        speed * (left.rho * left.u - right.rho * right.u)
            - (left.rho * left.u * left.v - right.rho * right.u * right.v),
        speed * (left.rho * left.v - right.rho * right.v)
            - (left.rho * left.v * left.v + p_l - right.rho * right.v * right.v - p_r),
    ]
}

/// Entropy-production margin of a discontinuity at speed `s`:
/// `s (E_r − E_l) − (F_r − F_l)` with `E = ½ρ|u|² + P` and `F = (E + p) v`.
/// Non-negative for admissible discontinuities, zero when nothing jumps.
pub fn check_energy_dissipation(eos: EosParams, speed: f64, left: &State, right: &State) -> f64 {
    let e_l = eos::energy_density(eos, left);
    let e_r = eos::energy_density(eos, right);
    let p_l = eos.k * left.rho.powf(eos.gamma);
    let p_r = eos.k * right.rho.powf(eos.gamma);
    let f_l = (e_l + p_l) * left.v;
    let f_r = (e_r + p_r) * right.v;
    speed * (e_r - e_l) - (f_r - f_l)
}
