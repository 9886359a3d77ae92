//! Verification pipeline: runs every stage on a resolved configuration and
//! produces a structured, deterministic report.
//!
//! Exit-code contract (see `main`): 0 all checks pass, 2 a claim check
//! failed, 3 input/config error, 4 numerical solver failure.

use serde::Serialize;

use euler_action::action::{self, ActionWindow, Verdict};
use euler_action::fixture;
use euler_action::riemann::{self, WaveKind};
use euler_action::spacetime::{self, PiecewiseSolution};
use euler_action::subsolution;
use euler_action::{Error as CoreError, Tolerances};

use crate::config::Resolved;

/// Abort with a definite exit code (setup or numerical failure). Claim
/// failures are not aborts: they are reported and mapped to exit code 2.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn setup(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    pub fn numerical(stage: &str, err: impl std::fmt::Display) -> Self {
        Failure {
            code: 4,
            message: format!("{stage}: {err}"),
        }
    }
}

/// One verified quantity inside a stage.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Human-readable statement of what was required.
    pub requirement: String,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, value: f64, requirement: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            value,
            requirement: requirement.into(),
            passed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl StageReport {
    fn new(stage: &str, checks: Vec<Check>) -> Self {
        StageReport {
            stage: stage.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

/// Full verification outcome; serializes deterministically (no timestamps,
/// fixed field order).
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub fixture_detected: bool,
    /// True when a wedge configuration was supplied and its glued solution
    /// has strictly lower action than the planar solution.
    pub counterexample: bool,
    pub passed: bool,
    pub failed_stage: Option<String>,
    pub stages: Vec<StageReport>,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// True when the configuration is the bundled counterexample (up to
/// floating-point noise) observed over a window with `t = 2 t0`, so the
/// sharp claim values apply.
pub fn fixture_detected(cfg: &Resolved) -> bool {
    let fx = fixture::counterexample();
    let close = |a: f64, b: f64| rel(a, b) <= 1e-12;
    let Some(sub) = cfg.sub else {
        return false;
    };
    close(cfg.eos.k, fx.eos.k)
        && close(cfg.eos.gamma, fx.eos.gamma)
        && close(cfg.data.left.rho, fx.data.left.rho)
        && close(cfg.data.left.u, fx.data.left.u)
        && close(cfg.data.left.v, fx.data.left.v)
        && close(cfg.data.right.rho, fx.data.right.rho)
        && close(cfg.data.right.u, fx.data.right.u)
        && close(cfg.data.right.v, fx.data.right.v)
        && close(sub.mu0, fx.sub.mu0)
        && close(sub.mu1, fx.sub.mu1)
        && close(sub.rho1, fx.sub.rho1)
        && close(sub.u1, fx.sub.u1)
        && close(sub.v1, fx.sub.v1)
        && close(sub.gamma1, fx.sub.gamma1)
        && close(sub.delta1, fx.sub.delta1)
        && close(sub.c1, fx.sub.c1)
        && close(cfg.t_end, 2.0 * cfg.t0)
        && cfg.l2.is_none()
}

/// Planar (x-independent) solution of the configured Riemann problem.
pub fn planar_solution(cfg: &Resolved) -> Result<PiecewiseSolution, Failure> {
    spacetime::build_1d_solution(&cfg.data, cfg.t_end, &cfg.tol)
        .map_err(|e| Failure::numerical("planar-solution", e))
}

/// Glued wild/classical solution; requires a feasible wedge configuration.
pub fn glued_solution(cfg: &Resolved) -> Result<PiecewiseSolution, Failure> {
    let sub = cfg
        .sub
        .as_ref()
        .ok_or_else(|| Failure::setup("this command needs a subsolution section in the config"))?;
    spacetime::build_glued_solution(&cfg.data, sub, cfg.t0, cfg.t_end, &cfg.tol)
        .map_err(|e| Failure::numerical("gluing", e))
}

/// The observation window: configured half-width, or the outer extent of
/// the supplied solutions (at least 1).
pub fn default_window(
    cfg: &Resolved,
    sols: &[&PiecewiseSolution],
) -> Result<ActionWindow, Failure> {
    let l2 = match cfg.l2 {
        Some(l2) => l2,
        None => spacetime::outer_extent(sols, cfg.t_end).max(1.0),
    };
    ActionWindow::new(cfg.l1, l2, cfg.t_end).map_err(|e| Failure::setup(e.to_string()))
}

fn feasibility_stage(cfg: &Resolved, tol: &Tolerances) -> Option<StageReport> {
    let sub = cfg.sub.as_ref()?;
    let report = subsolution::check_feasibility(sub, &cfg.data, tol);
    let residual_ok = !report
        .violations
        .iter()
        .any(|v| v.contains("jump condition") || v.contains("speed ordering"));
    let mut checks = vec![
        Check::new(
            "jump-residuals",
            report.worst_residual(),
            "all six interface jump conditions hold",
            residual_ok,
        ),
        Check::new(
            "kinetic-margin",
            report.subsolution_margins[0],
            "wedge kinetic level strictly dominates the mean velocity",
            !report.violations.iter().any(|v| v.contains("kinetic")),
        ),
        Check::new(
            "momentum-flux-margin",
            report.subsolution_margins[1],
            "relaxed momentum flux strictly positive definite",
            !report
                .violations
                .iter()
                .any(|v| v.contains("momentum-flux")),
        ),
        Check::new(
            "energy-margin-left",
            report.admissibility_margins[0],
            "left interface dissipates energy",
            !report
                .violations
                .iter()
                .any(|v| v.starts_with("left interface produces")),
        ),
        Check::new(
            "energy-margin-right",
            report.admissibility_margins[1],
            "right interface dissipates energy",
            !report
                .violations
                .iter()
                .any(|v| v.starts_with("right interface produces")),
        ),
    ];
    // Catch-all so no violation can pass silently.
    if report.is_feasible() != checks.iter().all(|c| c.passed) {
        checks.push(Check::new(
            "other-violations",
            report.violations.len() as f64,
            "no further violations",
            false,
        ));
    }
    Some(StageReport::new("feasibility", checks))
}

fn planar_stage(
    cfg: &Resolved,
    fixture_mode: bool,
) -> Result<(StageReport, PiecewiseSolution), Failure> {
    let mid = riemann::solve_middle_density(&cfg.data, &cfg.tol)
        .map_err(|e| Failure::numerical("planar-solution", e))?;
    let mut checks = vec![Check::new(
        "root-residual",
        mid.residual.abs(),
        "wave-curve mismatch at the middle density below 1e-11",
        mid.residual.abs() <= 1e-11,
    )];
    if fixture_mode {
        checks.push(Check::new(
            "middle-density",
            mid.rho,
            "middle density in (93, 94)",
            mid.rho > 93.0 && mid.rho < 94.0,
        ));
        let fan = riemann::solve_riemann(&cfg.data, &cfg.tol)
            .map_err(|e| Failure::numerical("planar-solution", e))?;
        let sigma = fan
            .waves
            .iter()
            .filter_map(|w| match w.kind {
                WaveKind::Shock { speed } => Some(speed),
                _ => None,
            })
            .fold(f64::NEG_INFINITY, f64::max);
        checks.push(Check::new(
            "shock-speed",
            sigma,
            "outgoing shock speed in (1, 1.1)",
            sigma > 1.0 && sigma < 1.1,
        ));
    } else {
        checks.push(Check::new(
            "middle-density",
            mid.rho,
            "middle density positive",
            mid.rho > 0.0,
        ));
    }
    let planar = planar_solution(cfg)?;
    Ok((StageReport::new("planar-solution", checks), planar))
}

fn gluing_stage(
    cfg: &Resolved,
    fixture_mode: bool,
) -> Result<(StageReport, Option<PiecewiseSolution>), Failure> {
    let sub = cfg.sub.as_ref().expect("caller checked");
    match spacetime::build_glued_solution(&cfg.data, sub, cfg.t0, cfg.t_end, &cfg.tol) {
        Ok(sol) => {
            let mut checks = vec![Check::new(
                "interaction-horizon",
                sol.horizon,
                "no wave interaction before the end of the window",
                sol.horizon >= cfg.t_end,
            )];
            if fixture_mode {
                let fx = fixture::counterexample();
                let expected = cfg.t0 * (1.0 + fx.sub.mu1 / fx.mu3);
                checks.push(Check::new(
                    "horizon-closed-form",
                    sol.horizon,
                    "horizon equals t0 (1 + mu1/mu3) to 1e-12",
                    rel(sol.horizon, expected) <= 1e-12,
                ));
            }
            Ok((StageReport::new("gluing", checks), Some(sol)))
        }
        // Reaching past the first interaction falsifies the construction's
        // validity claim: report it, do not abort.
        Err(CoreError::Horizon { horizon, .. }) => {
            let checks = vec![Check::new(
                "interaction-horizon",
                horizon,
                "no wave interaction before the end of the window",
                false,
            )];
            Ok((StageReport::new("gluing", checks), None))
        }
        Err(e) => Err(Failure::numerical("gluing", e)),
    }
}

#[allow(clippy::too_many_arguments)]
fn comparison_stage(
    cfg: &Resolved,
    first: &PiecewiseSolution,
    planar: &PiecewiseSolution,
    fixture_mode: bool,
    grid: (usize, usize),
) -> Result<(StageReport, bool), Failure> {
    let window = default_window(cfg, &[first, planar])?;
    let stage = "action-comparison";

    let closed_first = action::action_closed_form(first, &window, &cfg.tol)
        .map_err(|e| Failure::numerical(stage, e))?;
    let closed_planar = action::action_closed_form(planar, &window, &cfg.tol)
        .map_err(|e| Failure::numerical(stage, e))?;

    let mut checks = Vec::new();
    for (name, sol, closed) in [
        ("quadrature-cross-check-first", first, closed_first),
        ("quadrature-cross-check-planar", planar, closed_planar),
    ] {
        let quad = action::action_quadrature(sol, &window, grid)
            .map_err(|e| Failure::numerical(stage, e))?;
        let gap = rel(quad, closed);
        checks.push(Check::new(
            name,
            gap,
            "midpoint quadrature within 0.5% of the closed form",
            gap <= 5e-3,
        ));
    }

    let cmp = action::compare(first, planar, &window, &cfg.tol)
        .map_err(|e| Failure::numerical(stage, e))?;
    let counterexample = cfg.sub.is_some() && cmp.difference < 0.0;

    if cfg.sub.is_some() {
        checks.push(Check::new(
            "action-difference",
            cmp.difference,
            "glued action strictly below the planar action",
            cmp.difference < 0.0 && matches!(cmp.verdict, Verdict::FirstLower),
        ));
    } else {
        checks.push(Check::new(
            "action-difference",
            cmp.difference,
            "identical solutions tie",
            cmp.difference == 0.0 && matches!(cmp.verdict, Verdict::Tie),
        ));
        checks.push(Check::new(
            "crossings",
            cmp.crossing_times.len() as f64,
            "no crossings for identical solutions",
            cmp.crossing_times.is_empty(),
        ));
    }

    if fixture_mode {
        let t2 = cfg.t_end * cfg.t_end;
        let fx = fixture::counterexample();
        checks.push(Check::new(
            "glued-coefficient",
            closed_first / t2,
            "action / T^2 matches the glued closed form to 1e-11",
            rel(closed_first / t2, fx.k_glued()) <= 1e-11,
        ));
        checks.push(Check::new(
            "planar-coefficient",
            closed_planar / t2,
            "action / T^2 matches the planar closed form to 1e-11",
            rel(closed_planar / t2, fx.k_one_dimensional()) <= 1e-11,
        ));
        // Second scale: the same coefficients must emerge at T' = 2T.
        let cfg2 = Resolved {
            t0: cfg.t0 * 2.0,
            t_end: cfg.t_end * 2.0,
            ..cfg.clone()
        };
        let glued2 = glued_solution(&cfg2)?;
        let planar2 = planar_solution(&cfg2)?;
        let window2 = default_window(&cfg2, &[&glued2, &planar2])?;
        let a2 = action::action_closed_form(&glued2, &window2, &cfg.tol)
            .map_err(|e| Failure::numerical(stage, e))?;
        let t2b = cfg2.t_end * cfg2.t_end;
        checks.push(Check::new(
            "coefficient-scale-invariance",
            a2 / t2b,
            "action / T^2 unchanged at double the horizon time",
            rel(a2 / t2b, closed_first / t2) <= 1e-11,
        ));
        checks.push(Check::new(
            "difference-magnitude",
            cmp.difference / t2,
            "difference per T^2 matches the derived value -12410.1947... to 1e-9",
            rel(cmp.difference / t2, -12410.194759961683) <= 1e-9,
        ));
        let crossing_ok = cmp.crossing_times.len() == 1
            && cmp.crossing_times[0] > cfg.t0
            && cmp.crossing_times[0] < cfg.t_end
            && (cmp.crossing_times[0] / cfg.t_end - 0.7019084813178085).abs() <= 1e-9;
        checks.push(Check::new(
            "crossing-time",
            cmp.crossing_times.first().copied().unwrap_or(f64::NAN),
            "running totals cross exactly once, strictly between t0 and T",
            crossing_ok,
        ));
    }

    Ok((StageReport::new(stage, checks), counterexample))
}

/// Run the full verification pipeline.
pub fn run_verify(cfg: &Resolved, grid: (usize, usize)) -> Result<VerifyReport, Failure> {
    let fixture_mode = fixture_detected(cfg);
    let mut stages = Vec::new();

    if let Some(stage) = feasibility_stage(cfg, &cfg.tol) {
        let failed = !stage.passed;
        stages.push(stage);
        if failed {
            return Ok(finish(fixture_mode, false, stages));
        }
    }

    let (stage, planar) = planar_stage(cfg, fixture_mode)?;
    let failed = !stage.passed;
    stages.push(stage);
    if failed {
        return Ok(finish(fixture_mode, false, stages));
    }

    let glued = if cfg.sub.is_some() {
        let (stage, glued) = gluing_stage(cfg, fixture_mode)?;
        let failed = !stage.passed;
        stages.push(stage);
        if failed {
            return Ok(finish(fixture_mode, false, stages));
        }
        glued
    } else {
        None
    };

    let first = glued.as_ref().unwrap_or(&planar);
    let (stage, counterexample) = comparison_stage(cfg, first, &planar, fixture_mode, grid)?;
    stages.push(stage);

    Ok(finish(fixture_mode, counterexample, stages))
}

fn finish(fixture_detected: bool, counterexample: bool, stages: Vec<StageReport>) -> VerifyReport {
    let failed_stage = stages.iter().find(|s| !s.passed).map(|s| s.stage.clone());
    VerifyReport {
        fixture_detected,
        counterexample,
        passed: failed_stage.is_none(),
        failed_stage,
        stages,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;

    #[test]
    fn default_config_verifies_as_the_counterexample() {
        let cfg = config::parse_config(config::DEFAULT_CONFIG).unwrap();
        let report = run_verify(&cfg, (301, 301)).unwrap();
        assert!(report.fixture_detected);
        assert!(report.counterexample);
        assert!(report.passed, "{:#?}", report.failed_stage);
        assert_eq!(report.stages.len(), 4);
    }

    #[test]
    fn halved_kinetic_level_fails_at_feasibility() {
        let text = config::DEFAULT_CONFIG.replace(
            "\"c1\": \"1121*sqrt(1281)/20 + 28037/12\"",
            "\"c1\": \"(1121*sqrt(1281)/20 + 28037/12)/2\"",
        );
        let cfg = config::parse_config(&text).unwrap();
        let report = run_verify(&cfg, (101, 101)).unwrap();
        assert!(!report.passed);
        assert_eq!(report.failed_stage.as_deref(), Some("feasibility"));
    }

    #[test]
    fn constant_data_verify_trivially_with_no_counterexample() {
        let text = r#"{
            "eos": { "k": 1, "gamma": 2 },
            "riemann": {
                "left":  { "rho": 2, "u": 0.25, "v": -1 },
                "right": { "rho": 2, "u": 0.25, "v": -1 }
            },
            "times": { "t0": 0.5, "t": 1 }
        }"#;
        let cfg = config::parse_config(text).unwrap();
        let report = run_verify(&cfg, (101, 101)).unwrap();
        assert!(report.passed);
        assert!(!report.counterexample);
        assert!(!report.fixture_detected);
    }
}
