//! Build the bundled configuration's two competing solutions and compare
//! their action over the shared window. Mirrors the README walkthrough.

use euler_action::{action, fixture, spacetime, Tolerances};

fn main() -> euler_action::Result<()> {
    let fx = fixture::counterexample();
    let tol = Tolerances::default();
    let (t0, t_end) = (0.5, 1.0); // wedge stop time and window end

    // Classical self-similar solution and its glued competitor.
    let planar = spacetime::build_1d_solution(&fx.data, t_end, &tol)?;
    let glued = spacetime::build_glued_solution(&fx.data, &fx.sub, t0, t_end, &tol)?;

    // Shared window: |x| < 1, |y| < μ₁ t₀, t ∈ (0, 2 t₀).
    let window = action::ActionWindow::new(1.0, fx.sub.mu1 * t0, t_end)?;
    let cmp = action::compare(&glued, &planar, &window, &tol)?;
    assert!(cmp.difference < 0.0); // the classical fan is not the minimizer
    println!("action difference (glued - planar): {:.3}", cmp.difference);
    Ok(())
}
