//! File emission: CSV tables and JSON documents with documented columns.
//!
//! All writers are deterministic — fixed column orders, no timestamps —
//! so repeated runs produce byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use euler_action::action::{ActionWindow, CumulativeSegment, ProfileSegment};
use euler_action::riemann::{WaveFan, WaveKind};
use euler_action::spacetime::PiecewiseSolution;
use euler_action::subsolution::ScanRow;
use euler_action::{riemann, Tolerances};

use crate::pipeline::Failure;

pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| Failure::setup(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| Failure::setup(format!("cannot write {}: {e}", path.display())))
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

/// Serialize any document as pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Sampled self-similar profile: one row per ray `xi = y / t`.
/// Columns: `xi, rho, u, v`.
pub fn profile_csv(fan: &WaveFan, samples: usize) -> String {
    // Pad the sampled ray range past the outermost waves.
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    for w in &fan.waves {
        lo = lo.min(w.kind.min_speed());
        hi = hi.max(w.kind.max_speed());
    }
    let pad = 0.25 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);

    let mut csv = String::from("xi,rho,u,v\n");
    let n = samples.max(2);
    for i in 0..n {
        let xi = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        // Sampling at t = 1 turns the ray coordinate into a position.
        let s = riemann::sample(fan, 1.0, xi).expect("panned range stays inside the fan");
        writeln!(csv, "{xi},{},{},{}", s.rho, s.u, s.v).unwrap();
    }
    csv
}

/// Wave table for a fan, one line per wave.
pub fn wave_table(fan: &WaveFan) -> String {
    if fan.waves.is_empty() {
        return "no waves (identical states)\n".to_string();
    }
    let mut out = String::new();
    for (i, w) in fan.waves.iter().enumerate() {
        let desc = match w.kind {
            WaveKind::Shock { speed } => format!("shock     speed {speed:+.12}"),
            WaveKind::Contact { speed } => format!("contact   speed {speed:+.12}"),
            WaveKind::Rarefaction { head, tail, .. } => {
                format!("rarefaction speeds {head:+.12} .. {tail:+.12}")
            }
        };
        writeln!(
            out,
            "wave {:>2}: {desc}   ({:.6}, {:.6}, {:.6}) -> ({:.6}, {:.6}, {:.6})",
            i + 1,
            w.left.rho,
            w.left.u,
            w.left.v,
            w.right.rho,
            w.right.u,
            w.right.v
        )
        .unwrap();
    }
    out
}

/// Boundary segments of solutions in the y–t plane.
/// Columns: `solution, slab, boundary, kind, speed, t_start, y_start, t_end, y_end`.
pub fn waves_csv(solutions: &[(&str, &PiecewiseSolution)]) -> String {
    let mut csv = String::from("solution,slab,boundary,kind,speed,t_start,y_start,t_end,y_end\n");
    for (name, sol) in solutions {
        for (si, slab) in sol.slabs.iter().enumerate() {
            for (bi, b) in slab.boundaries.iter().enumerate() {
                let kind = format!("{:?}", b.kind).to_lowercase();
                writeln!(
                    csv,
                    "{name},{si},{bi},{kind},{},{},{},{},{}",
                    b.line.speed,
                    slab.t_start,
                    b.line.y_at(slab.t_start),
                    slab.t_end,
                    b.line.y_at(slab.t_end)
                )
                .unwrap();
            }
        }
    }
    csv
}

/// Action rate and running total of one solution.
/// Columns: `t, rate, total`; breakpoints appear exactly, and a rate jump
/// produces two rows with the same `t`.
pub fn action_csv(
    profile: &[ProfileSegment],
    cumulative: &[CumulativeSegment],
    samples: usize,
) -> String {
    let mut csv = String::from("t,rate,total\n");
    let t_total: f64 = profile.iter().map(|s| s.t1 - s.t0).sum();
    for (seg, cum) in profile.iter().zip(cumulative.iter()) {
        let span = seg.t1 - seg.t0;
        let n = ((samples as f64 * span / t_total).ceil() as usize).max(2);
        for i in 0..n {
            let frac = i as f64 / (n - 1) as f64;
            let t = seg.t0 + span * frac;
            let rate = seg.rate0 + (seg.rate1 - seg.rate0) * frac;
            writeln!(csv, "{t},{rate},{}", cum.value_at(t)).unwrap();
        }
    }
    csv
}

/// Scan grid results.
/// Columns: `rho1, c1, feasible, worst_residual, margin_kinetic,
/// margin_flux, margin_energy_left, margin_energy_right, k_if_feasible`;
/// unavailable entries are left empty.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut csv = String::from(
        "rho1,c1,feasible,worst_residual,margin_kinetic,margin_flux,\
         margin_energy_left,margin_energy_right,k_if_feasible\n",
    );
    for row in rows {
        let feasible = row
            .feasibility
            .as_ref()
            .map(|f| if f.is_feasible() { "true" } else { "false" })
            .unwrap_or("false");
        let nums = match &row.feasibility {
            Some(f) => [
                f.worst_residual().to_string(),
                f.subsolution_margins[0].to_string(),
                f.subsolution_margins[1].to_string(),
                f.admissibility_margins[0].to_string(),
                f.admissibility_margins[1].to_string(),
            ],
            None => Default::default(),
        };
        let k = row
            .action_coefficient
            .map(|k| k.to_string())
            .unwrap_or_default();
        writeln!(
            csv,
            "{},{},{feasible},{},{},{},{},{},{k}",
            row.rho1, row.c1, nums[0], nums[1], nums[2], nums[3], nums[4]
        )
        .unwrap();
    }
    csv
}

/// Bundle of both solutions' region maps for plotting.
#[derive(serde::Serialize)]
pub struct RegionDocument<'a> {
    pub solutions: Vec<NamedSolution<'a>>,
}

#[derive(serde::Serialize)]
pub struct NamedSolution<'a> {
    pub name: &'a str,
    pub solution: &'a PiecewiseSolution,
}

/// Action curves of a solution over a window, as CSV.
pub fn action_curves(
    sol: &PiecewiseSolution,
    window: &ActionWindow,
    tol: &Tolerances,
    samples: usize,
) -> Result<String, Failure> {
    let profile = euler_action::action::action_profile(sol, window, tol)
        .map_err(|e| Failure::numerical("figures", e))?;
    let cumulative = euler_action::action::cumulative_action(&profile);
    Ok(action_csv(&profile, &cumulative, samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use euler_action::fixture;
    use euler_action::spacetime;

    #[test]
    fn action_csv_duplicates_the_jump_time() {
        let fx = fixture::counterexample();
        let tol = Tolerances::default();
        let sol = spacetime::build_glued_solution(&fx.data, &fx.sub, 0.5, 1.0, &tol).unwrap();
        let window = ActionWindow::new(1.0, fx.sub.mu1 * 0.5, 1.0).unwrap();
        let csv = action_curves(&sol, &window, &tol, 50).unwrap();
        let t0_rows: Vec<&str> = csv.lines().filter(|l| l.starts_with("0.5,")).collect();
        assert_eq!(
            t0_rows.len(),
            2,
            "expected a duplicated breakpoint: {t0_rows:?}"
        );
        assert_ne!(t0_rows[0], t0_rows[1]);
        // The running total is continuous across the duplicated time.
        let totals: Vec<f64> = t0_rows
            .iter()
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        assert!((totals[0] - totals[1]).abs() <= 1e-9 * totals[0].abs());
    }

    #[test]
    fn profile_csv_lists_rays_and_states() {
        let fx = fixture::counterexample();
        let fan = riemann::solve_riemann(&fx.data, &Tolerances::default()).unwrap();
        let csv = profile_csv(&fan, 101);
        assert!(csv.starts_with("xi,rho,u,v\n"));
        assert_eq!(csv.lines().count(), 102);
        // The middle of the range shows the compressed middle state.
        let mid_row = csv.lines().nth(51).unwrap();
        let rho: f64 = mid_row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((rho - fx.rho_m).abs() < 1e-9);
    }

    #[test]
    fn scan_csv_has_one_row_per_cell() {
        use euler_action::subsolution::{self, FamilySeed};
        let fx = fixture::counterexample();
        let tol = Tolerances::default();
        let seed = FamilySeed::from(&fx.sub);
        let rows = subsolution::scan_family(
            &fx.data,
            (2.0, 4.0),
            (fx.sub.c1 * 0.9, fx.sub.c1 * 1.1),
            (3, 3),
            &seed,
            |_| Some(1.0),
            &tol,
        );
        let csv = scan_csv(&rows);
        assert_eq!(csv.lines().count(), 10);
        assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 9));
    }
}
