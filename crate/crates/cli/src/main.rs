//! `euler-action`: verify the two-dimensional construction whose glued
//! wild/classical solution undercuts the classical planar solution in
//! action, and emit the associated tables and plot data.
//!
//! Exit codes: 0 all checks pass; 2 a claim check failed; 3 input or
//! configuration error; 4 numerical solver failure.

// Guards are written `!(x > 0.0)` on purpose: unlike `x <= 0.0` they also
// reject NaN, which must never pass a domain check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod expr;
mod output;
mod pipeline;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use euler_action::action;
use euler_action::riemann;
use euler_action::spacetime;
use euler_action::subsolution::{self, FamilySeed};

use crate::pipeline::Failure;

/// Like `println!`, but tolerates a closed stdout (e.g. piping into
/// `head`), which must truncate output, not crash the process.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

/// Like `print!`, with the same closed-pipe tolerance.
macro_rules! out_raw {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "euler-action",
    version,
    about = "Action comparison toolkit for planar Riemann problems of the 2-D barotropic Euler equations"
)]
struct Cli {
    /// JSON run configuration (defaults to the bundled counterexample)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Directory for emitted report and data files
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Override the jump-condition residual tolerance
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    /// Grid size NxM: quadrature cells (verify), scan cells (scan),
    /// or sample count (riemann, figures; N is used)
    #[arg(long, global = true, value_name = "NxM", value_parser = parse_grid)]
    grid: Option<(usize, usize)>,

    /// Print machine-readable JSON to stdout instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification pipeline and check every claim
    Verify,
    /// Solve the configured Riemann problem; print waves and middle state
    Riemann,
    /// Wedge-configuration tools: feasibility, solving, family scans
    Subsolution {
        #[command(subcommand)]
        mode: SubsolutionMode,
    },
    /// Emit plot data: wave lines, region maps and action curves
    Figures,
}

#[derive(Subcommand)]
enum SubsolutionMode {
    /// Evaluate all jump conditions and margins of the configured wedge
    Check,
    /// Re-solve the six-equation system from the configured seed
    Solve,
    /// Scan the (rho1, C1) family around the configured wedge
    Scan,
}

fn parse_grid(text: &str) -> Result<(usize, usize), String> {
    let (n, m) = text
        .split_once('x')
        .ok_or_else(|| format!("expected NxM, got '{text}'"))?;
    let parse = |s: &str| -> Result<usize, String> {
        let v = s
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid grid dimension '{s}'"))?;
        if v == 0 {
            return Err("grid dimensions must be positive".to_string());
        }
        Ok(v)
    };
    Ok((parse(n)?, parse(m)?))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let mut cfg = config::load(cli.config.as_deref()).map_err(|e| Failure::setup(e.to_string()))?;
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure::setup(format!(
                "--tol must be a positive number, got {tol}"
            )));
        }
        cfg.tol.residual_abs = tol;
    }
    let out_dir = cli.out.clone().or_else(|| cfg.out.clone());

    match cli.command {
        Command::Verify => cmd_verify(&cfg, &cli, out_dir.as_deref()),
        Command::Riemann => cmd_riemann(&cfg, &cli, out_dir.as_deref()),
        Command::Subsolution { ref mode } => match mode {
            SubsolutionMode::Check => cmd_subsolution_check(&cfg, &cli, out_dir.as_deref()),
            SubsolutionMode::Solve => cmd_subsolution_solve(&cfg, &cli, out_dir.as_deref()),
            SubsolutionMode::Scan => cmd_subsolution_scan(&cfg, &cli, out_dir.as_deref()),
        },
        Command::Figures => cmd_figures(&cfg, &cli, out_dir.as_deref()),
    }
}

fn cmd_verify(
    cfg: &config::Resolved,
    cli: &Cli,
    out_dir: Option<&std::path::Path>,
) -> Result<i32, Failure> {
    let grid = cli.grid.unwrap_or((601, 601));
    let report = pipeline::run_verify(cfg, grid)?;
    let json_text = output::to_json(&report);

    if cli.json {
        out_raw!("{json_text}");
    } else {
        for stage in &report.stages {
            for check in &stage.checks {
                out!(
                    "[{}] {}/{}: {} (value {})",
                    if check.passed { "PASS" } else { "FAIL" },
                    stage.stage,
                    check.name,
                    check.requirement,
                    check.value
                );
            }
        }
        match (&report.failed_stage, report.counterexample) {
            (Some(stage), _) => out!("verify: FAIL at stage {stage}"),
            (None, true) => {
                out!("verify: PASS — glued solution undercuts the planar solution")
            }
            (None, false) => out!("verify: PASS"),
        }
    }

    if let Some(dir) = out_dir {
        output::write_file(&output::out_path(dir, "verify_report.json"), &json_text)?;
    }
    Ok(if report.passed { 0 } else { 2 })
}

fn cmd_riemann(
    cfg: &config::Resolved,
    cli: &Cli,
    out_dir: Option<&std::path::Path>,
) -> Result<i32, Failure> {
    let fan = riemann::solve_riemann(&cfg.data, &cfg.tol)
        .map_err(|e| Failure::numerical("riemann", e))?;
    let mid = riemann::solve_middle_density(&cfg.data, &cfg.tol)
        .map_err(|e| Failure::numerical("riemann", e))?;

    if cli.json {
        #[derive(Serialize)]
        struct RiemannDocument<'a> {
            middle: &'a riemann::MiddleState,
            fan: &'a riemann::WaveFan,
        }
        out_raw!(
            "{}",
            output::to_json(&RiemannDocument {
                middle: &mid,
                fan: &fan
            })
        );
    } else {
        out_raw!("{}", output::wave_table(&fan));
        if !fan.waves.is_empty() {
            out!("middle state: rho = {:.12}, v = {:.12}", mid.rho, mid.v);
        }
    }

    if let Some(dir) = out_dir {
        let samples = cli.grid.map(|g| g.0).unwrap_or(401);
        output::write_file(
            &output::out_path(dir, "riemann_fan.json"),
            &output::to_json(&fan),
        )?;
        output::write_file(
            &output::out_path(dir, "riemann_profile.csv"),
            &output::profile_csv(&fan, samples),
        )?;
    }
    Ok(0)
}

fn cmd_subsolution_check(
    cfg: &config::Resolved,
    cli: &Cli,
    out_dir: Option<&std::path::Path>,
) -> Result<i32, Failure> {
    let sub = cfg
        .sub
        .as_ref()
        .ok_or_else(|| Failure::setup("subsolution check needs a subsolution section"))?;
    let report = subsolution::check_feasibility(sub, &cfg.data, &cfg.tol);

    if cli.json {
        out_raw!("{}", output::to_json(&report));
    } else {
        out!("jump residuals (left) : {:?}", report.rh_left);
        out!("jump residuals (right): {:?}", report.rh_right);
        out!("subsolution margins   : {:?}", report.subsolution_margins);
        out!("admissibility margins : {:?}", report.admissibility_margins);
        if report.is_feasible() {
            out!("feasible: yes");
        } else {
            out!("feasible: no");
            for v in &report.violations {
                out!("  violation: {v}");
            }
        }
    }

    if let Some(dir) = out_dir {
        output::write_file(
            &output::out_path(dir, "feasibility_report.json"),
            &output::to_json(&report),
        )?;
    }
    Ok(if report.is_feasible() { 0 } else { 2 })
}

fn cmd_subsolution_solve(
    cfg: &config::Resolved,
    cli: &Cli,
    out_dir: Option<&std::path::Path>,
) -> Result<i32, Failure> {
    let seed_sub = cfg
        .sub
        .as_ref()
        .ok_or_else(|| Failure::setup("subsolution solve needs a subsolution section as seed"))?;
    let seed = FamilySeed::from(seed_sub);
    let (solved, newton) =
        subsolution::solve_family(&cfg.data, seed_sub.rho1, seed_sub.c1, &seed, &cfg.tol)
            .map_err(|e| Failure::numerical("subsolution-solve", e))?;
    let feasibility = subsolution::check_feasibility(&solved, &cfg.data, &cfg.tol);

    #[derive(Serialize)]
    struct SolveDocument<'a> {
        solution: &'a subsolution::FanSubsolution,
        iterations: usize,
        residual_norm: f64,
        jacobian_condition: f64,
        feasibility: &'a subsolution::FeasibilityReport,
    }
    let doc = SolveDocument {
        solution: &solved,
        iterations: newton.iterations,
        residual_norm: newton.residual_norm,
        jacobian_condition: newton.condition,
        feasibility: &feasibility,
    };

    if cli.json {
        out_raw!("{}", output::to_json(&doc));
    } else {
        out!(
            "solved in {} iterations, residual {:.3e}, jacobian condition {:.3e}",
            newton.iterations,
            newton.residual_norm,
            newton.condition
        );
        out!("mu0 = {:.15}, mu1 = {:.15}", solved.mu0, solved.mu1);
        out!(
            "rho1 = {}, u1 = {:.15}, v1 = {:.15}",
            solved.rho1,
            solved.u1,
            solved.v1
        );
        out!(
            "gamma1 = {:.15}, delta1 = {:.15}, c1 = {:.15}",
            solved.gamma1,
            solved.delta1,
            solved.c1
        );
        out!(
            "feasible: {}",
            if feasibility.is_feasible() {
                "yes"
            } else {
                "no"
            }
        );
    }

    if let Some(dir) = out_dir {
        output::write_file(
            &output::out_path(dir, "solve_result.json"),
            &output::to_json(&doc),
        )?;
    }
    Ok(if feasibility.is_feasible() { 0 } else { 2 })
}

fn cmd_subsolution_scan(
    cfg: &config::Resolved,
    cli: &Cli,
    out_dir: Option<&std::path::Path>,
) -> Result<i32, Failure> {
    let seed_sub = cfg
        .sub
        .as_ref()
        .ok_or_else(|| Failure::setup("subsolution scan needs a subsolution section as seed"))?;
    let seed = FamilySeed::from(seed_sub);
    let grid = cli.grid.unwrap_or((5, 5));
    let rho1_range = (0.5 * seed_sub.rho1, 2.0 * seed_sub.rho1);
    let c1_range = (0.75 * seed_sub.c1, 1.5 * seed_sub.c1);

    // Coefficient attached to feasible cells: the glued solution's action
    // per squared horizon time over its own derived window.
    let planar = pipeline::planar_solution(cfg)?;
    let coefficient = |sub: &subsolution::FanSubsolution| -> Option<f64> {
        let glued =
            spacetime::build_glued_solution(&cfg.data, sub, cfg.t0, cfg.t_end, &cfg.tol).ok()?;
        let window = pipeline::default_window(cfg, &[&glued, &planar]).ok()?;
        let a = action::action_closed_form(&glued, &window, &cfg.tol).ok()?;
        Some(a / (cfg.t_end * cfg.t_end))
    };
    let rows = subsolution::scan_family(
        &cfg.data,
        rho1_range,
        c1_range,
        grid,
        &seed,
        coefficient,
        &cfg.tol,
    );
    let csv = output::scan_csv(&rows);
    let feasible = rows
        .iter()
        .filter(|r| r.feasibility.as_ref().is_some_and(|f| f.is_feasible()))
        .count();

    if let Some(dir) = out_dir {
        output::write_file(&output::out_path(dir, "scan.csv"), &csv)?;
        out!(
            "scan: {} of {} cells feasible; wrote {}",
            feasible,
            rows.len(),
            output::out_path(dir, "scan.csv").display()
        );
    } else if cli.json {
        out_raw!("{}", output::to_json(&rows));
    } else {
        out_raw!("{csv}");
    }
    Ok(0)
}

fn cmd_figures(
    cfg: &config::Resolved,
    cli: &Cli,
    out_dir: Option<&std::path::Path>,
) -> Result<i32, Failure> {
    let dir = out_dir
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("figures"));
    let samples = cli.grid.map(|g| g.0).unwrap_or(401);

    let planar = pipeline::planar_solution(cfg)?;
    let glued = match cfg.sub {
        Some(_) => Some(pipeline::glued_solution(cfg)?),
        None => None,
    };
    // "first" is the candidate solution under comparison: the glued one
    // when a wedge is configured, otherwise the planar solution itself.
    let first = glued.as_ref().unwrap_or(&planar);
    let window = pipeline::default_window(cfg, &[first, &planar])?;

    let mut named: Vec<(&str, &spacetime::PiecewiseSolution)> = Vec::new();
    if let Some(g) = glued.as_ref() {
        named.push(("glued", g));
    }
    named.push(("planar", &planar));

    output::write_file(
        &output::out_path(&dir, "waves.csv"),
        &output::waves_csv(&named),
    )?;
    let regions = output::RegionDocument {
        solutions: named
            .iter()
            .map(|(name, solution)| output::NamedSolution { name, solution })
            .collect(),
    };
    output::write_file(
        &output::out_path(&dir, "regions.json"),
        &output::to_json(&regions),
    )?;

    output::write_file(
        &output::out_path(&dir, "action_first.csv"),
        &output::action_curves(first, &window, &cfg.tol, samples)?,
    )?;
    output::write_file(
        &output::out_path(&dir, "action_second.csv"),
        &output::action_curves(&planar, &window, &cfg.tol, samples)?,
    )?;

    let comparison = action::compare(first, &planar, &window, &cfg.tol)
        .map_err(|e| Failure::numerical("figures", e))?;
    output::write_file(
        &output::out_path(&dir, "comparison.json"),
        &output::to_json(&comparison),
    )?;

    if !cli.json {
        out!(
            "figures: wrote waves.csv, regions.json, action_first.csv ({}), action_second.csv (planar), comparison.json to {}",
            if glued.is_some() { "glued" } else { "planar" },
            dir.display()
        );
    }
    Ok(0)
}
