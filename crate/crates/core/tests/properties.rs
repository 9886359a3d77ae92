//! Property tests: structural identities that must hold across randomly
//! drawn data, not just on the bundled configuration.

use proptest::prelude::*;

use euler_action::action::{self, ActionWindow};
use euler_action::eos::{self, EosParams, State};
use euler_action::fixture;
use euler_action::riemann::{
    self, hugoniot_velocity_jump, rarefaction_velocity_change, RiemannData, WaveKind,
};
use euler_action::spacetime::{self, RegionState};
use euler_action::subsolution::{self, FamilySeed, FanSubsolution};
use euler_action::Tolerances;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn state_strategy() -> impl Strategy<Value = State> {
    (0.1f64..30.0, -5.0f64..5.0, -8.0f64..8.0)
        .prop_map(|(rho, u, v)| State::new(rho, u, v).unwrap())
}

/// Riemann data for the quadratic gas, kept safely away from vacuum
/// formation: the velocity separation stays below the wave-curve budget.
fn data_strategy() -> impl Strategy<Value = RiemannData> {
    (state_strategy(), state_strategy())
        .prop_map(|(left, right)| RiemannData {
            left,
            right,
            eos: EosParams::quadratic(),
        })
        .prop_filter("stay away from vacuum", |data| {
            let eos = data.eos;
            let budget = 2.0 * eos::sound_speed(eos, data.left.rho).unwrap()
                + 2.0 * eos::sound_speed(eos, data.right.rho).unwrap();
            data.right.v - data.left.v < budget - 0.5
        })
}

/// Velocity change across the wave joining `rho` to the side density,
/// recomputed from the public single-wave helpers.
fn strength(eos: EosParams, rho: f64, rho_side: f64) -> f64 {
    if rho > rho_side {
        hugoniot_velocity_jump(eos, rho_side, rho).unwrap()
    } else if rho < rho_side {
        rarefaction_velocity_change(eos, rho_side, rho).unwrap()
    } else {
        0.0
    }
}

proptest! {
    #[test]
    fn middle_state_solves_both_wave_curves(data in data_strategy()) {
        let mid = riemann::solve_middle_density(&data, &tol()).unwrap();
        let eos = data.eos;
        let v_from_left = data.left.v - strength(eos, mid.rho, data.left.rho);
        let v_from_right = data.right.v + strength(eos, mid.rho, data.right.rho);
        let scale = data.left.v.abs().max(data.right.v.abs()).max(1.0);
        prop_assert!((v_from_left - v_from_right).abs() <= 1e-7 * scale,
            "curves disagree: {v_from_left} vs {v_from_right}");
        prop_assert!((mid.v - v_from_left).abs() <= 1e-7 * scale);
        prop_assert!(mid.rho > 0.0);
    }

    #[test]
    fn mirror_symmetry_of_the_middle_state(data in data_strategy()) {
        let mirrored = RiemannData {
            left: State { rho: data.right.rho, u: data.right.u, v: -data.right.v },
            right: State { rho: data.left.rho, u: data.left.u, v: -data.left.v },
            eos: data.eos,
        };
        let mid = riemann::solve_middle_density(&data, &tol()).unwrap();
        let mid_m = riemann::solve_middle_density(&mirrored, &tol()).unwrap();
        prop_assert!((mid.rho - mid_m.rho).abs() <= 1e-9 * mid.rho.max(1.0));
        prop_assert!((mid.v + mid_m.v).abs() <= 1e-8 * mid.v.abs().max(1.0));
        prop_assert_eq!(mid.branch1, mid_m.branch3);
        prop_assert_eq!(mid.branch3, mid_m.branch1);
    }

    #[test]
    fn fan_samples_are_self_similar(
        data in data_strategy(),
        xi in -20.0f64..20.0,
        t in 0.05f64..3.0,
        scale in 0.1f64..10.0,
    ) {
        let fan = riemann::solve_riemann(&data, &tol()).unwrap();
        let a = riemann::sample(&fan, t, xi * t).unwrap();
        let b = riemann::sample(&fan, scale * t, xi * scale * t).unwrap();
        prop_assert!((a.rho - b.rho).abs() <= 1e-12 * a.rho.max(1.0));
        prop_assert!((a.u - b.u).abs() <= 1e-12 * a.u.abs().max(1.0));
        prop_assert!((a.v - b.v).abs() <= 1e-12 * a.v.abs().max(1.0));
    }

    #[test]
    fn emitted_waves_satisfy_their_jump_conditions(data in data_strategy()) {
        let eos = data.eos;
        let fan = riemann::solve_riemann(&data, &tol()).unwrap();
        for wave in &fan.waves {
            match wave.kind {
                WaveKind::Shock { speed } | WaveKind::Contact { speed } => {
                    let scale = [
                        wave.left.rho * (wave.left.v.abs() + speed.abs()),
                        wave.right.rho * (wave.right.v.abs() + speed.abs()),
                        eos::pressure(eos, wave.left.rho).unwrap(),
                        eos::pressure(eos, wave.right.rho).unwrap(),
                        1.0,
                    ]
                    .into_iter()
                    .fold(0.0f64, f64::max)
                        * (1.0 + wave.left.v.abs() + wave.right.v.abs() + speed.abs());
                    for r in riemann::check_rh(eos, speed, &wave.left, &wave.right) {
                        prop_assert!(r.abs() <= 1e-8 * scale, "residual {r} at scale {scale}");
                    }
                    let margin =
                        riemann::check_energy_dissipation(eos, speed, &wave.left, &wave.right);
                    prop_assert!(margin >= -1e-8 * scale * scale.sqrt().max(1.0),
                        "wave produces energy: {margin}");
                }
                WaveKind::Rarefaction { head, tail, .. } => {
                    // Edges join continuously onto the flanking states.
                    prop_assert!(head <= tail + 1e-12);
                }
            }
        }
    }

    #[test]
    fn relaxed_conditions_collapse_to_classical_jump_conditions(
        left in state_strategy(),
        mid in state_strategy(),
        right in state_strategy(),
        mu0 in -6.0f64..0.0,
        gap in 0.1f64..6.0,
    ) {
        let eos = EosParams::quadratic();
        let mu1 = mu0 + gap;
        let sub = FanSubsolution {
            mu0,
            mu1,
            rho1: mid.rho,
            u1: mid.u,
            v1: mid.v,
            gamma1: 0.5 * mid.speed_sq() - mid.v * mid.v,
            delta1: mid.u * mid.v,
            c1: mid.speed_sq(),
        };
        let relaxed_l = subsolution::rh_left_residuals(&sub, &left, eos);
        let classical_l = riemann::check_rh(eos, mu0, &left, &mid);
        let relaxed_r = subsolution::rh_right_residuals(&sub, &right, eos);
        let classical_r = riemann::check_rh(eos, mu1, &mid, &right);
        for (a, b) in relaxed_l.iter().zip(classical_l.iter())
            .chain(relaxed_r.iter().zip(classical_r.iter()))
        {
            prop_assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{a} vs {b}");
        }
        let adm = subsolution::admissibility_margins(&sub, &left, &right, eos);
        let adm_l = riemann::check_energy_dissipation(eos, mu0, &left, &mid);
        let adm_r = riemann::check_energy_dissipation(eos, mu1, &mid, &right);
        prop_assert!((adm[0] - adm_l).abs() <= 1e-9 * adm_l.abs().max(1.0));
        prop_assert!((adm[1] - adm_r).abs() <= 1e-9 * adm_r.abs().max(1.0));
    }

    #[test]
    fn family_solutions_project_and_satisfy_the_system(
        rho1 in 2.0f64..6.0,
        c1_factor in 0.8f64..1.2,
    ) {
        let fx = fixture::counterexample();
        let c1 = fx.sub.c1 * c1_factor;
        let seed = FamilySeed::from(&fx.sub);
        // Not every cell solves; those that do must satisfy the system and
        // be fixed points of the solver.
        if let Ok((sub, _)) = subsolution::solve_family(&fx.data, rho1, c1, &seed, &tol()) {
            let report = subsolution::check_feasibility(&sub, &fx.data, &tol());
            prop_assert!(report.worst_residual() <= 1e-7,
                "solver left residual {}", report.worst_residual());
            let (again, replay) =
                subsolution::solve_family(&fx.data, rho1, c1, &FamilySeed::from(&sub), &tol())
                    .unwrap();
            prop_assert!(replay.iterations <= 1);
            prop_assert!((again.mu0 - sub.mu0).abs() <= 1e-9 * sub.mu0.abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn glued_evaluation_tiles_the_plane(
        t in 1e-6f64..1.0,
        y in -40.0f64..40.0,
        nudge in prop::sample::select(vec![-1e-12f64, 0.0, 1e-12]),
    ) {
        let fx = fixture::counterexample();
        let sol = spacetime::build_glued_solution(&fx.data, &fx.sub, 0.5, 1.0, &tol()).unwrap();
        // Points at, just left of, and just right of every boundary must
        // all evaluate cleanly, as must arbitrary interior points.
        let state = spacetime::evaluate(&sol, t, y + nudge).unwrap();
        if let RegionState::Classical(s) = state {
            prop_assert!(s.rho > 0.0);
        }
        for slab in &sol.slabs {
            if t <= slab.t_start || t > slab.t_end {
                continue;
            }
            for b in &slab.boundaries {
                let yb = b.line.y_at(t);
                prop_assert!(spacetime::evaluate(&sol, t, yb + nudge).is_ok());
            }
        }
        // Far out on either side the outer states persist.
        let far_right = spacetime::evaluate(&sol, t, 1e9).unwrap();
        match far_right {
            RegionState::Classical(s) => prop_assert!((s.v + fx.v_minus).abs() < 1e-12),
            RegionState::Wild { .. } => prop_assert!(false, "outer region must be classical"),
        }
    }

    #[test]
    fn action_scales_quadratically_with_the_window(k in 0.3f64..2.5) {
        let fx = fixture::counterexample();
        let t0 = 0.5;
        let base = spacetime::build_glued_solution(&fx.data, &fx.sub, t0, 2.0 * t0, &tol()).unwrap();
        let scaled =
            spacetime::build_glued_solution(&fx.data, &fx.sub, k * t0, 2.0 * k * t0, &tol()).unwrap();
        let w = ActionWindow::new(1.0, fx.sub.mu1 * t0, 2.0 * t0).unwrap();
        let wk = ActionWindow::new(1.0, fx.sub.mu1 * k * t0, 2.0 * k * t0).unwrap();
        let a = action::action_closed_form(&base, &w, &tol()).unwrap();
        let ak = action::action_closed_form(&scaled, &wk, &tol()).unwrap();
        prop_assert!((ak - k * k * a).abs() <= 1e-11 * a.abs(),
            "A(k window) = {ak}, k²A = {}", k * k * a);
    }

    #[test]
    fn action_difference_ignores_the_outer_window(extra in 0.1f64..30.0) {
        let fx = fixture::counterexample();
        let glued = spacetime::build_glued_solution(&fx.data, &fx.sub, 0.5, 1.0, &tol()).unwrap();
        let classical = spacetime::build_1d_solution(&fx.data, 1.0, &tol()).unwrap();
        let l2 = fx.sub.mu1 * 0.5;
        let base = ActionWindow::new(1.0, l2, 1.0).unwrap();
        let wide = ActionWindow::new(1.0, l2 + extra, 1.0).unwrap();
        let d_base = action::compare(&glued, &classical, &base, &tol()).unwrap().difference;
        let d_wide = action::compare(&glued, &classical, &wide, &tol()).unwrap().difference;
        prop_assert!((d_base - d_wide).abs() <= 1e-8 * d_base.abs().max(1.0),
            "difference moved: {d_base} vs {d_wide}");
    }
}
