//! Polytropic equation of state and the pointwise densities derived from it.
//!
//! Pressure law `p(ρ) = K ρ^γ` with `K > 0`, `γ > 1`. The associated
//! pressure potential is `P(ρ) = ρ ∫ p(r)/r² dr = K ρ^γ / (γ − 1)`; for
//! `K = 1, γ = 2` both collapse to `ρ²`. Vacuum (`ρ = 0`) is rejected
//! everywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the pressure law `p(ρ) = K ρ^γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EosParams {
    pub k: f64,
    pub gamma: f64,
}

impl EosParams {
    pub fn new(k: f64, gamma: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!(
                "pressure coefficient K must be positive, got {k}"
            )));
        }
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!(
                "adiabatic exponent must exceed 1, got {gamma}"
            )));
        }
        Ok(Self { k, gamma })
    }

    /// The quadratic law `p(ρ) = ρ²` (`K = 1`, `γ = 2`) used by the bundled
    /// fixture.
    pub fn quadratic() -> Self {
        Self { k: 1.0, gamma: 2.0 }
    }
}

/// A constant fluid state: density and the two velocity components.
/// `u` is tangential to wave fronts, `v` normal (the direction in which all
/// planar waves of this crate move).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
}

impl State {
    pub fn new(rho: f64, u: f64, v: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!(
                "density must be positive, got {rho}"
            )));
        }
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::Domain(format!(
                "velocity components must be finite, got ({u}, {v})"
            )));
        }
        Ok(Self { rho, u, v })
    }

    /// `|u|² = u² + v²`.
    pub fn speed_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }
}

fn require_positive_density(rho: f64) -> Result<()> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Domain(format!(
            "density must be positive, got {rho}"
        )));
    }
    Ok(())
}

/// `p(ρ) = K ρ^γ`.
pub fn pressure(eos: EosParams, rho: f64) -> Result<f64> {
    require_positive_density(rho)?;
    Ok(eos.k * rho.powf(eos.gamma))
}

/// Pressure potential `P(ρ) = K ρ^γ / (γ − 1)`.
pub fn pressure_potential(eos: EosParams, rho: f64) -> Result<f64> {
    require_positive_density(rho)?;
    Ok(eos.k * rho.powf(eos.gamma) / (eos.gamma - 1.0))
}

/// Sound speed `c(ρ) = sqrt(p'(ρ)) = sqrt(K γ ρ^(γ−1))`.
pub fn sound_speed(eos: EosParams, rho: f64) -> Result<f64> {
    require_positive_density(rho)?;
    Ok((eos.k * eos.gamma * rho.powf(eos.gamma - 1.0)).sqrt())
}

/// Action density `½ ρ |u|² − P(ρ)` of a constant state.
pub fn action_density(eos: EosParams, state: &State) -> f64 {
    0.5 * state.rho * state.speed_sq() - eos.k * state.rho.powf(eos.gamma) / (eos.gamma - 1.0)
}

/// Energy density `½ ρ |u|² + P(ρ)` of a constant state.
pub fn energy_density(eos: EosParams, state: &State) -> f64 {
    0.5 * state.rho * state.speed_sq() + eos.k * state.rho.powf(eos.gamma) / (eos.gamma - 1.0)
}

/// Energy density with the kinetic term replaced by a prescribed level `C`:
/// `½ ρ C + P(ρ)`. Used for wild regions where only `|u|²` is pinned.
pub fn energy_density_with_kinetic(eos: EosParams, rho: f64, c: f64) -> Result<f64> {
    require_positive_density(rho)?;
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!(
            "kinetic energy level must be non-negative, got {c}"
        )));
    }
    Ok(0.5 * rho * c + eos.k * rho.powf(eos.gamma) / (eos.gamma - 1.0))
}
