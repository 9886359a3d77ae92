//! Exact planar Riemann solutions, fan subsolutions and action comparison
//! for the two-dimensional barotropic Euler equations.
//!
//! The library builds two kinds of piecewise solutions to the same Riemann
//! data: the classical self-similar wave fan, and a glued solution whose
//! early-time wedge carries a relaxed ("wild") state described by a fan
//! subsolution. Both can be integrated exactly over a space-time window to
//! compare their action `∫∫∫ (½ρ|u|² − P(ρ))`.
//!
//! Modules follow the pipeline:
//!
//! * [`eos`] — pressure law, pressure potential, sound speed, action density
//! * [`riemann`] — exact planar Riemann solver and jump-condition checks
//! * [`subsolution`] — fan-subsolution residuals, feasibility, family search
//! * [`spacetime`] — assembly of piecewise space-time solutions and horizon
//! * [`action`] — closed-form and quadrature action, profiles, comparison
//! * [`fixture`] — the bundled demonstration configuration in closed form

// Guards are written `!(x > 0.0)` on purpose: unlike `x <= 0.0` they also
// reject NaN, which must never pass a domain check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod action;
pub mod eos;
pub mod error;
pub mod fixture;
pub mod newton;
pub mod quad;
pub mod riemann;
pub mod spacetime;
pub mod subsolution;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
