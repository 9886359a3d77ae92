//! Damped Newton iteration for small dense nonlinear systems, with the
//! supporting LU factorization.
//!
//! The systems solved here are tiny (six unknowns), so the linear algebra is
//! a plain Gaussian elimination with partial pivoting; the exact 1-norm
//! condition number of the last Jacobian is cheap at this size and is
//! reported for diagnostics.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct NewtonConfig {
    pub max_iter: usize,
    /// Step halvings allowed per iteration before giving up on descent.
    pub max_halvings: u32,
    /// Convergence bound on the residual infinity norm.
    pub residual_tol: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self {
            max_iter: 100,
            max_halvings: 30,
            residual_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct NewtonReport {
    pub iterations: usize,
    pub residual_norm: f64,
    /// 1-norm condition number of the Jacobian at the last iterate.
    pub condition: f64,
}

/// In-place LU factorization with partial pivoting of a row-major `n × n`
/// matrix. `perm` receives the row permutation.
pub fn lu_factor(n: usize, a: &mut [f64], perm: &mut [usize]) -> Result<()> {
    assert_eq!(a.len(), n * n);
    assert_eq!(perm.len(), n);
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = a[col * n + col].abs();
        for row in col + 1..n {
            let v = a[row * n + col].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val == 0.0 || !pivot_val.is_finite() {
            return Err(Error::Solver(format!("singular matrix at column {col}")));
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            perm.swap(col, pivot_row);
        }
        let pivot = a[col * n + col];
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            a[row * n + col] = factor;
            for k in col + 1..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
        }
    }
    Ok(())
}

/// Solve `A x = b` from a factorization produced by [`lu_factor`];
/// `b` is replaced by the solution.
pub fn lu_solve(n: usize, lu: &[f64], perm: &[usize], b: &mut [f64]) {
    let mut x = vec![0.0; n];
    for i in 0..n {
        x[i] = b[perm[i]];
    }
    for i in 0..n {
        for k in 0..i {
            x[i] -= lu[i * n + k] * x[k];
        }
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            x[i] -= lu[i * n + k] * x[k];
        }
        x[i] /= lu[i * n + i];
    }
    b.copy_from_slice(&x);
}

/// One-shot dense solve; `a` is consumed as factorization scratch.
pub fn solve_linear(n: usize, a: &mut [f64], b: &mut [f64]) -> Result<()> {
    let mut perm = vec![0usize; n];
    lu_factor(n, a, &mut perm)?;
    lu_solve(n, a, &perm, b);
    Ok(())
}

fn norm_1(n: usize, a: &[f64]) -> f64 {
    (0..n)
        .map(|j| (0..n).map(|i| a[i * n + j].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Exact 1-norm condition number from a factorization: `‖A‖₁ · max_j ‖A⁻¹ e_j‖₁`.
fn condition_1(n: usize, a: &[f64], lu: &[f64], perm: &[usize]) -> f64 {
    let mut inv_norm: f64 = 0.0;
    let mut col = vec![0.0; n];
    for j in 0..n {
        col.iter_mut().for_each(|v| *v = 0.0);
        col[j] = 1.0;
        lu_solve(n, lu, perm, &mut col);
        inv_norm = inv_norm.max(col.iter().map(|v| v.abs()).sum());
    }
    norm_1(n, a) * inv_norm
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Damped Newton iteration on `residual(x) = 0`.
///
/// `residual` fills an `n`-vector, `jacobian` a row-major `n × n` matrix.
/// Each step is halved until the residual norm decreases, up to
/// `max_halvings` times; failure to descend or to converge within
/// `max_iter` is a solver error carrying the last residual norm.
pub fn damped_newton(
    x: &mut [f64],
    residual: impl Fn(&[f64], &mut [f64]),
    jacobian: impl Fn(&[f64], &mut [f64]),
    cfg: &NewtonConfig,
) -> Result<NewtonReport> {
    let n = x.len();
    let mut r = vec![0.0; n];
    let mut jac = vec![0.0; n * n];
    let mut lu = vec![0.0; n * n];
    let mut perm = vec![0usize; n];
    let mut step = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial_r = vec![0.0; n];

    residual(x, &mut r);
    let mut norm = inf_norm(&r);
    let mut condition = f64::NAN;

    for iter in 0..cfg.max_iter {
        if norm <= cfg.residual_tol {
            // Converged before any factorization (e.g. an exact seed):
            // still report the conditioning at the accepted point.
            if condition.is_nan() {
                jacobian(x, &mut jac);
                lu.copy_from_slice(&jac);
                condition = match lu_factor(n, &mut lu, &mut perm) {
                    Ok(()) => condition_1(n, &jac, &lu, &perm),
                    Err(_) => f64::INFINITY,
                };
            }
            return Ok(NewtonReport {
                iterations: iter,
                residual_norm: norm,
                condition,
            });
        }
        jacobian(x, &mut jac);
        lu.copy_from_slice(&jac);
        lu_factor(n, &mut lu, &mut perm)?;
        condition = condition_1(n, &jac, &lu, &perm);
        step.copy_from_slice(&r);
        lu_solve(n, &lu, &perm, &mut step);

        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=cfg.max_halvings {
            for i in 0..n {
                trial[i] = x[i] - lambda * step[i];
            }
            residual(&trial, &mut trial_r);
            let trial_norm = inf_norm(&trial_r);
            if trial_norm.is_finite() && trial_norm < norm {
                x.copy_from_slice(&trial);
                r.copy_from_slice(&trial_r);
                norm = trial_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(Error::Solver(format!(
                "line search stalled at residual norm {norm:e}"
            )));
        }
    }
    if norm <= cfg.residual_tol {
        return Ok(NewtonReport {
            iterations: cfg.max_iter,
            residual_norm: norm,
            condition,
        });
    }
    Err(Error::Solver(format!(
        "no convergence in {} iterations, residual norm {norm:e}",
        cfg.max_iter
    )))
}
