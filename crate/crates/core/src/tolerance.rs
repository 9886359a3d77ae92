//! Single source of numerical tolerances.
//!
//! Every solver and checker takes a [`Tolerances`] value instead of hiding
//! its own constants, so acceptance checks can cite one policy.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Absolute bound for jump-condition residuals on unit-scaled quantities.
    pub residual_abs: f64,
    /// Relative bound for comparisons against closed-form values.
    pub relative: f64,
    /// Strict inequalities must clear `strict_scale * scale(expression)`.
    pub strict_scale: f64,
    /// Bisection terminates at bracket width `root_width * max(1, |root|)`.
    pub root_width: f64,
    /// Declared relative tolerance for quadrature cross-checks.
    pub quadrature_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual_abs: 1e-9,
            relative: 1e-10,
            strict_scale: 1e-12,
            root_width: 1e-13,
            quadrature_rel: 1e-10,
        }
    }
}

impl Tolerances {
    /// True when `value` matches `reference` within the relative tolerance
    /// (absolute for references below 1).
    pub fn close_rel(&self, value: f64, reference: f64) -> bool {
        (value - reference).abs() <= self.relative * reference.abs().max(1.0)
    }

    /// Margin a strict inequality must clear, given the magnitude of the
    /// largest term entering the expression.
    pub fn strict_margin(&self, scale: f64) -> f64 {
        self.strict_scale * scale.abs().max(1.0)
    }
}
