//! Fan subsolutions: the algebraic system a wild wedge must satisfy, and a
//! numerical search over its two-parameter solution family.
//!
//! A fan subsolution replaces the middle state of a two-wave fan by a wedge
//! carrying density `rho1`, mean velocity `(u1, v1)`, kinetic-energy level
//! `c1 > u1² + v1²` and momentum-flux corrections `(gamma1, delta1)`. The
//! wedge interfaces must satisfy relaxed jump conditions (six equations),
//! two strict interior-point inequalities and two energy-dissipation
//! inequalities. Six of the eight wedge numbers are determined by the jump
//! conditions once `(rho1, c1)` are fixed, which is what [`solve_family`]
//! exploits.

use serde::{Deserialize, Serialize};

use crate::eos::{self, EosParams, State};
use crate::error::{Error, Result};
use crate::newton::{self, NewtonConfig, NewtonReport};
use crate::riemann::RiemannData;
use crate::tolerance::Tolerances;

/// The eight numbers describing a wild wedge between interface speeds
/// `mu0 < mu1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanSubsolution {
    pub mu0: f64,
    pub mu1: f64,
    pub rho1: f64,
    pub u1: f64,
    pub v1: f64,
    pub gamma1: f64,
    pub delta1: f64,
    pub c1: f64,
}

impl FanSubsolution {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu0 < self.mu1) {
            return Err(Error::Domain(format!(
                "interface speeds must be ordered, got mu0 = {}, mu1 = {}",
                self.mu0, self.mu1
            )));
        }
        if !(self.rho1 > 0.0) {
            return Err(Error::Domain(format!(
                "wedge density must be positive, got {}",
                self.rho1
            )));
        }
        if !(self.c1 > 0.0) {
            return Err(Error::Domain(format!(
                "kinetic energy level must be positive, got {}",
                self.c1
            )));
        }
        Ok(())
    }
}

/// Relaxed jump-condition residuals on the left interface (speed `mu0`,
/// outer state `left`), as left-hand side minus right-hand side.
pub fn rh_left_residuals(sub: &FanSubsolution, left: &State, eos: EosParams) -> [f64; 3] {
    let p_out = eos.k * left.rho.powf(eos.gamma);
    let p1 = eos.k * sub.rho1.powf(eos.gamma);
    [
        sub.mu0 * (left.rho - sub.rho1) - (left.rho * left.v - sub.rho1 * sub.v1),
        sub.mu0 * (left.rho * left.u - sub.rho1 * sub.u1)
            - (left.rho * left.u * left.v - sub.rho1 * sub.delta1),
        sub.mu0 * (left.rho * left.v - sub.rho1 * sub.v1)
            - (left.rho * left.v * left.v - sub.rho1 * (0.5 * sub.c1 - sub.gamma1) + p_out - p1),
    ]
}

/// Relaxed jump-condition residuals on the right interface (speed `mu1`,
/// outer state `right`).
pub fn rh_right_residuals(sub: &FanSubsolution, right: &State, eos: EosParams) -> [f64; 3] {
    let p_out = eos.k * right.rho.powf(eos.gamma);
    let p1 = eos.k * sub.rho1.powf(eos.gamma);
    [
        sub.mu1 * (sub.rho1 - right.rho) - (sub.rho1 * sub.v1 - right.rho * right.v),
        sub.mu1 * (sub.rho1 * sub.u1 - right.rho * right.u)
            - (sub.rho1 * sub.delta1 - right.rho * right.u * right.v),
        sub.mu1 * (sub.rho1 * sub.v1 - right.rho * right.v)
            - (sub.rho1 * (0.5 * sub.c1 - sub.gamma1) - right.rho * right.v * right.v + p1 - p_out),
    ]
}

/// The two strict interior-point margins; feasibility requires both
/// strictly positive.
pub fn subsolution_margins(sub: &FanSubsolution) -> [f64; 2] {
    let m0 = sub.c1 - sub.u1 * sub.u1 - sub.v1 * sub.v1;
    let a = 0.5 * sub.c1 - sub.u1 * sub.u1 + sub.gamma1;
    let b = 0.5 * sub.c1 - sub.v1 * sub.v1 - sub.gamma1;
    let d = sub.delta1 - sub.u1 * sub.v1;
    [m0, a * b - d * d]
}

/// Energy-dissipation margins of the two interfaces (weak inequalities,
/// non-negative for admissibility). The wedge side uses the kinetic level
/// `c1` in place of `|u|²`.
pub fn admissibility_margins(
    sub: &FanSubsolution,
    left: &State,
    right: &State,
    eos: EosParams,
) -> [f64; 2] {
    let p1 = eos.k * sub.rho1.powf(eos.gamma);
    let e1 = 0.5 * sub.rho1 * sub.c1 + p1 / (eos.gamma - 1.0);
    let f1 = (e1 + p1) * sub.v1;

    let e_l = eos::energy_density(eos, left);
    let p_l = eos.k * left.rho.powf(eos.gamma);
    let f_l = (e_l + p_l) * left.v;

    let e_r = eos::energy_density(eos, right);
    let p_r = eos.k * right.rho.powf(eos.gamma);
    let f_r = (e_r + p_r) * right.v;

    [
        sub.mu0 * (e1 - e_l) - (f1 - f_l),
        sub.mu1 * (e_r - e1) - (f_r - f1),
    ]
}

/// Aggregated verdict over the full algebraic system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub rh_left: [f64; 3],
    pub rh_right: [f64; 3],
    pub subsolution_margins: [f64; 2],
    pub admissibility_margins: [f64; 2],
    /// Human-readable description of every violated equation or inequality;
    /// empty means feasible.
    pub violations: Vec<String>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    /// Largest jump-condition residual magnitude.
    pub fn worst_residual(&self) -> f64 {
        self.rh_left
            .iter()
            .chain(self.rh_right.iter())
            .fold(0.0, |acc, r| acc.max(r.abs()))
    }
}

/// Magnitude scale of the jump-condition terms, used to turn absolute
/// residual bounds into scale-aware ones.
fn interface_scale(sub: &FanSubsolution, data: &RiemannData) -> f64 {
    let eos = data.eos;
    let p1 = eos.k * sub.rho1.powf(eos.gamma);
    [
        data.left.rho * data.left.v.abs(),
        data.right.rho * data.right.v.abs(),
        data.left.rho * data.left.v * data.left.v,
        data.right.rho * data.right.v * data.right.v,
        sub.rho1 * (0.5 * sub.c1 - sub.gamma1).abs(),
        eos.k * data.left.rho.powf(eos.gamma),
        eos.k * data.right.rho.powf(eos.gamma),
        p1,
        1.0,
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Evaluate the whole system: six residuals, four margins and the speed
/// ordering. The verdict lists everything that fails at the given
/// tolerances.
pub fn check_feasibility(
    sub: &FanSubsolution,
    data: &RiemannData,
    tol: &Tolerances,
) -> FeasibilityReport {
    let rh_left = rh_left_residuals(sub, &data.left, data.eos);
    let rh_right = rh_right_residuals(sub, &data.right, data.eos);
    let sub_margins = subsolution_margins(sub);
    let adm_margins = admissibility_margins(sub, &data.left, &data.right, data.eos);

    let mut violations = Vec::new();
    if !(sub.mu0 < sub.mu1) {
        violations.push(format!(
            "speed ordering: mu0 = {} is not below mu1 = {}",
            sub.mu0, sub.mu1
        ));
    }

    let scale = interface_scale(sub, data);
    let residual_bound = tol.residual_abs * scale.max(1.0);
    let sides = [("left", &rh_left), ("right", &rh_right)];
    for (side, residuals) in sides {
        for (i, r) in residuals.iter().enumerate() {
            if r.abs() > residual_bound {
                violations.push(format!(
                    "{side} interface jump condition {i}: residual {r:e} exceeds {residual_bound:e}"
                ));
            }
        }
    }

    let kinetic_scale = sub.c1.abs().max(sub.u1 * sub.u1 + sub.v1 * sub.v1);
    if sub_margins[0] <= tol.strict_margin(kinetic_scale) {
        violations.push(format!(
            "kinetic margin not strictly positive: {:e}",
            sub_margins[0]
        ));
    }
    let tensor_scale = (0.5 * sub.c1 + sub.gamma1.abs()).powi(2);
    if sub_margins[1] <= tol.strict_margin(tensor_scale) {
        violations.push(format!(
            "momentum-flux margin not strictly positive: {:e}",
            sub_margins[1]
        ));
    }

    let energy_scale = scale * (1.0 + data.left.v.abs().max(data.right.v.abs()));
    for (name, margin) in [("left", adm_margins[0]), ("right", adm_margins[1])] {
        if margin < -tol.residual_abs * energy_scale.max(1.0) {
            violations.push(format!(
                "{name} interface produces energy: margin {margin:e}"
            ));
        }
    }

    FeasibilityReport {
        rh_left,
        rh_right,
        subsolution_margins: sub_margins,
        admissibility_margins: adm_margins,
        violations,
    }
}

/// Starting values for the six unknowns determined by the jump conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySeed {
    pub mu0: f64,
    pub mu1: f64,
    pub u1: f64,
    pub v1: f64,
    pub gamma1: f64,
    pub delta1: f64,
}

impl From<&FanSubsolution> for FamilySeed {
    fn from(sub: &FanSubsolution) -> Self {
        Self {
            mu0: sub.mu0,
            mu1: sub.mu1,
            u1: sub.u1,
            v1: sub.v1,
            gamma1: sub.gamma1,
            delta1: sub.delta1,
        }
    }
}

/// Solve the six jump conditions for `(mu0, mu1, u1, v1, gamma1, delta1)` at
/// fixed `(rho1, c1)` by damped Newton with the analytic Jacobian.
///
/// Feasibility is *not* implied; run [`check_feasibility`] on the result.
/// The returned report carries the iteration count and the Jacobian
/// condition number at the last iterate.
pub fn solve_family(
    data: &RiemannData,
    rho1: f64,
    c1: f64,
    seed: &FamilySeed,
    tol: &Tolerances,
) -> Result<(FanSubsolution, NewtonReport)> {
    if !(rho1 > 0.0) || !(c1 > 0.0) {
        return Err(Error::Domain(format!(
            "family parameters must be positive, got rho1 = {rho1}, c1 = {c1}"
        )));
    }
    let eos = data.eos;
    let (left, right) = (data.left, data.right);

    let assemble = |x: &[f64]| FanSubsolution {
        mu0: x[0],
        mu1: x[1],
        rho1,
        u1: x[2],
        v1: x[3],
        gamma1: x[4],
        delta1: x[5],
        c1,
    };

    let residual = |x: &[f64], r: &mut [f64]| {
        let sub = assemble(x);
        let l = rh_left_residuals(&sub, &left, eos);
        let rr = rh_right_residuals(&sub, &right, eos);
        r[..3].copy_from_slice(&l);
        r[3..].copy_from_slice(&rr);
    };

    // Rows: three left then three right residuals.
    // Columns: mu0, mu1, u1, v1, gamma1, delta1.
    let jacobian = |x: &[f64], j: &mut [f64]| {
        let (mu0, mu1, u1, v1) = (x[0], x[1], x[2], x[3]);
        j.iter_mut().for_each(|v| *v = 0.0);
        j[0] = left.rho - rho1; // dL0/dmu0
        j[3] = rho1; // dL0/dv1
        j[6] = left.rho * left.u - rho1 * u1; // dL1/dmu0
        j[8] = -mu0 * rho1; // dL1/du1
        j[11] = rho1; // dL1/ddelta1
        j[12] = left.rho * left.v - rho1 * v1; // dL2/dmu0
        j[15] = -mu0 * rho1; // dL2/dv1
        j[16] = -rho1; // dL2/dgamma1
        j[19] = rho1 - right.rho; // dR0/dmu1
        j[21] = -rho1; // dR0/dv1
        j[25] = rho1 * u1 - right.rho * right.u; // dR1/dmu1
        j[26] = mu1 * rho1; // dR1/du1
        j[29] = -rho1; // dR1/ddelta1
        j[31] = rho1 * v1 - right.rho * right.v; // dR2/dmu1
        j[33] = mu1 * rho1; // dR2/dv1
        j[34] = rho1; // dR2/dgamma1
    };

    let mut x = [
        seed.mu0,
        seed.mu1,
        seed.u1,
        seed.v1,
        seed.gamma1,
        seed.delta1,
    ];
    let scale = interface_scale(
        &FanSubsolution {
            mu0: seed.mu0,
            mu1: seed.mu1,
            rho1,
            u1: seed.u1,
            v1: seed.v1,
            gamma1: seed.gamma1,
            delta1: seed.delta1,
            c1,
        },
        data,
    );
    let cfg = NewtonConfig {
        residual_tol: tol.root_width * scale.max(1.0),
        ..NewtonConfig::default()
    };
    let report = newton::damped_newton(&mut x, residual, jacobian, &cfg)?;
    Ok((assemble(&x), report))
}

/// One cell of a family scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub rho1: f64,
    pub c1: f64,
    pub sub: Option<FanSubsolution>,
    pub feasibility: Option<FeasibilityReport>,
    pub solver_error: Option<String>,
    /// Supplied by the caller for feasible cells (typically the action
    /// coefficient of the glued solution this cell induces).
    pub action_coefficient: Option<f64>,
}

fn grid_values(range: (f64, f64), n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![range.0];
    }
    (0..n)
        .map(|i| range.0 + (range.1 - range.0) * (i as f64) / ((n - 1) as f64))
        .collect()
}

fn scan_one_rho(
    data: &RiemannData,
    rho1: f64,
    c1_values: &[f64],
    seed: &FamilySeed,
    coefficient: &(impl Fn(&FanSubsolution) -> Option<f64> + Sync),
    tol: &Tolerances,
) -> Vec<ScanRow> {
    let mut rows = Vec::with_capacity(c1_values.len());
    // Warm-start along the c1 sweep: each converged cell seeds the next.
    let mut current_seed = *seed;
    for &c1 in c1_values {
        match solve_family(data, rho1, c1, &current_seed, tol) {
            Ok((sub, _)) => {
                current_seed = FamilySeed::from(&sub);
                let feasibility = check_feasibility(&sub, data, tol);
                let action_coefficient = if feasibility.is_feasible() {
                    coefficient(&sub)
                } else {
                    None
                };
                rows.push(ScanRow {
                    rho1,
                    c1,
                    sub: Some(sub),
                    feasibility: Some(feasibility),
                    solver_error: None,
                    action_coefficient,
                });
            }
            Err(err) => rows.push(ScanRow {
                rho1,
                c1,
                sub: None,
                feasibility: None,
                solver_error: Some(err.to_string()),
                action_coefficient: None,
            }),
        }
    }
    rows
}

/// Grid scan over `(rho1, c1)`: solve the jump conditions in every cell,
/// check feasibility, and attach a caller-computed coefficient to feasible
/// cells. Cells are reported in row-major order (`rho1` outer, `c1` inner);
/// per-cell solver failures are recorded, not fatal.
///
/// Rows are independent and run in parallel when the `parallel` feature is
/// enabled; the output is identical either way.
pub fn scan_family(
    data: &RiemannData,
    rho1_range: (f64, f64),
    c1_range: (f64, f64),
    grid: (usize, usize),
    seed: &FamilySeed,
    coefficient: impl Fn(&FanSubsolution) -> Option<f64> + Sync,
    tol: &Tolerances,
) -> Vec<ScanRow> {
    let rho_values = grid_values(rho1_range, grid.0);
    let c1_values = grid_values(c1_range, grid.1);

    #[cfg(feature = "parallel")]
    let per_rho: Vec<Vec<ScanRow>> = {
        use rayon::prelude::*;
        rho_values
            .par_iter()
            .map(|&rho1| scan_one_rho(data, rho1, &c1_values, seed, &coefficient, tol))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_rho: Vec<Vec<ScanRow>> = rho_values
        .iter()
        .map(|&rho1| scan_one_rho(data, rho1, &c1_values, seed, &coefficient, tol))
        .collect();

    per_rho.into_iter().flatten().collect()
}

/// Sequential twin of [`scan_family`], kept unconditionally for benchmarks
/// and determinism cross-checks.
pub fn scan_family_seq(
    data: &RiemannData,
    rho1_range: (f64, f64),
    c1_range: (f64, f64),
    grid: (usize, usize),
    seed: &FamilySeed,
    coefficient: impl Fn(&FanSubsolution) -> Option<f64> + Sync,
    tol: &Tolerances,
) -> Vec<ScanRow> {
    let rho_values = grid_values(rho1_range, grid.0);
    let c1_values = grid_values(c1_range, grid.1);
    rho_values
        .iter()
        .flat_map(|&rho1| scan_one_rho(data, rho1, &c1_values, seed, &coefficient, tol))
        .collect()
}
