//! Bundled demonstration configuration: a symmetric compressive Riemann
//! problem for the quadratic-pressure gas together with a feasible fan
//! subsolution whose glued space-time solution accumulates strictly less
//! action than the classical two-shock solution.
//!
//! Every closed-form constant is entered as an exact surd expression; the
//! two root-defined quantities (classical middle density and shock speed)
//! are computed by the Riemann solver at construction time.

use crate::eos::{EosParams, State};
use crate::riemann::{self, RiemannData};
use crate::subsolution::FanSubsolution;
use crate::tolerance::Tolerances;

/// The demonstration configuration, fully assembled.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub eos: EosParams,
    /// Symmetric colliding data: `(1, 0, v_minus)` against `(1, 0, -v_minus)`.
    pub data: RiemannData,
    /// Feasible wild wedge between `mu0 < 0 < mu1`.
    pub sub: FanSubsolution,
    /// Inward normal velocity of the outer states.
    pub v_minus: f64,
    /// Middle density of the classical two-shock solution (root of the
    /// wave-curve equation, no closed form).
    pub rho_m: f64,
    /// Outgoing classical shock speed; the shocks sit at `y = ±sigma t`.
    pub sigma: f64,
    /// Wave speeds of the fan emitted where the left wedge interface stops.
    pub mu2: f64,
    pub mu3: f64,
    /// Mirror speeds of the fan emitted at the right interface.
    pub mu4: f64,
    pub mu5: f64,
    /// Middle state of the left seam fan; the right one mirrors it.
    pub rho2: f64,
    pub v2: f64,
    pub rho3: f64,
    pub v3: f64,
}

/// Build the bundled configuration.
pub fn counterexample() -> Fixture {
    let s35 = 35.0_f64.sqrt();
    let s915 = 915.0_f64.sqrt();
    let s1281 = 1281.0_f64.sqrt();

    let eos = EosParams::quadratic();
    let v_minus = 57.0 * s35 / 10.0 + 59.0 * s915 / 30.0;
    let data = RiemannData {
        left: State::new(1.0, 0.0, v_minus).unwrap(),
        right: State::new(1.0, 0.0, -v_minus).unwrap(),
        eos,
    };

    let mu1 = 57.0 * s35 / 20.0 + 59.0 * s915 / 60.0;
    let sub = FanSubsolution {
        mu0: -mu1,
        mu1,
        rho1: 3.0,
        u1: 0.0,
        v1: 0.0,
        gamma1: -1121.0 * s1281 / 40.0 - 28013.0 / 24.0,
        delta1: 0.0,
        c1: 1121.0 * s1281 / 20.0 + 28037.0 / 12.0,
    };

    let mid = riemann::solve_middle_density(&data, &Tolerances::default())
        .expect("bundled data has a two-shock solution");
    let rho_m = mid.rho;
    let sigma = v_minus / (rho_m - 1.0);

    let v2 = 57.0 * s35 / 10.0;
    Fixture {
        eos,
        data,
        sub,
        v_minus,
        rho_m,
        sigma,
        mu2: v2 - s915 / 30.0,
        mu3: 6.0 * s35,
        mu4: -6.0 * s35,
        mu5: -(v2 - s915 / 30.0),
        rho2: 60.0,
        v2,
        rho3: 60.0,
        v3: -v2,
    }
}

impl Fixture {
    /// Action density of the outer states (closed form of `v_minus²/2 - 1`).
    pub fn action_density_outer(&self) -> f64 {
        let s1281 = 1281.0_f64.sqrt();
        1121.0 * s1281 / 20.0 + 28045.0 / 12.0
    }

    /// Action density carried by the wild wedge, `rho1 c1 / 2 - p(rho1)`.
    pub fn action_density_wild(&self) -> f64 {
        let s1281 = 1281.0_f64.sqrt();
        3363.0 * s1281 / 40.0 + 27965.0 / 8.0
    }

    /// Action density of the wedge once it comes to rest, `-p(rho1)`.
    pub fn action_density_wedge_rest(&self) -> f64 {
        -9.0
    }

    /// Action density of the seam-fan middle states.
    pub fn action_density_seam_fan(&self) -> f64 {
        61029.0 / 2.0
    }

    /// Action of the glued solution over the standard window equals
    /// `k_glued() * t_end²` for any `t_end` up to the horizon (with the
    /// wedge collapse at `t_end / 2`).
    pub fn k_glued(&self) -> f64 {
        let s35 = 35.0_f64.sqrt();
        let s915 = 915.0_f64.sqrt();
        (25590093.0 * s35 + 4675573.0 * s915) / 800.0
    }

    /// Matching coefficient for the classical two-shock solution, in terms
    /// of its middle density and shock speed.
    pub fn k_one_dimensional(&self) -> f64 {
        let s35 = 35.0_f64.sqrt();
        let s915 = 915.0_f64.sqrt();
        let s1281 = 1281.0_f64.sqrt();
        3349377.0 * s35 / 100.0 + 6149393.0 * s915 / 900.0
            - self.sigma * (2.0 * self.rho_m * self.rho_m + 1121.0 * s1281 / 10.0 + 28045.0 / 6.0)
    }

    /// Closed form of `k_glued() - k_one_dimensional()`; negative, which is
    /// the whole point of the configuration.
    pub fn k_difference(&self) -> f64 {
        let s35 = 35.0_f64.sqrt();
        let s915 = 915.0_f64.sqrt();
        let s1281 = 1281.0_f64.sqrt();
        self.sigma * (2.0 * self.rho_m * self.rho_m + 1121.0 * s1281 / 10.0 + 28045.0 / 6.0)
            - 1204923.0 * s35 / 800.0
            - 7114987.0 * s915 / 7200.0
    }

    /// The glued construction stays interaction-free up to
    /// `t0 * horizon_factor()`: the seam fans cross at that time.
    pub fn horizon_factor(&self) -> f64 {
        1.0 + self.sub.mu1 / self.mu3
    }

    /// Data of the Riemann problem posed at the stopped left interface:
    /// outer state against the wedge at rest.
    pub fn seam_left_data(&self) -> RiemannData {
        RiemannData {
            left: self.data.left,
            right: State::new(self.sub.rho1, 0.0, 0.0).unwrap(),
            eos: self.eos,
        }
    }

    /// Mirror problem at the stopped right interface.
    pub fn seam_right_data(&self) -> RiemannData {
        RiemannData {
            left: State::new(self.sub.rho1, 0.0, 0.0).unwrap(),
            right: self.data.right,
            eos: self.eos,
        }
    }
}
