//! Error type shared by all modules.

/// Library-wide error enum. Variants are grouped by how callers should react:
/// invalid inputs ([`Error::Domain`], [`Error::Degenerate`]), structural
/// limits of the requested computation ([`Error::Vacuum`], [`Error::Horizon`],
/// [`Error::Infeasible`]) and numerical failures ([`Error::Solver`]).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input violates a type invariant (non-positive density, bad exponent, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was asked for a configuration where it is undefined
    /// (e.g. a shock speed across a zero density jump).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The Riemann data produce a vacuum region; out of scope by design.
    #[error(
        "vacuum forms: velocity separation {separation} exceeds the combined \
         rarefaction budget {budget}"
    )]
    Vacuum { separation: f64, budget: f64 },

    /// An iterative solver failed (no bracket, singular Jacobian, no convergence).
    #[error("solver failure: {0}")]
    Solver(String),

    /// The requested final time reaches past the first wave interaction.
    #[error("wave interaction at t = {horizon} precedes requested time {requested}: {detail}")]
    Horizon {
        horizon: f64,
        requested: f64,
        detail: String,
    },

    /// A subsolution failed its feasibility check where feasibility is required.
    #[error("infeasible subsolution: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
