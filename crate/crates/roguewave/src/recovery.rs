//! Equality-constrained ℓ1 recovery (basis pursuit) in the Haar basis.
//!
//! Solves `min ‖c‖₁ subject to A c = g`, where `A` is the composition
//! "Haar synthesis, then measure" for either measurement realization.
//! Complex fields decouple exactly into two real problems (the Haar basis
//! is real), so [`recover`] runs the solver once per channel.
//!
//! The solver is ADMM with an exact projection onto the constraint set:
//! every operator used here has orthonormal rows, so the projection is
//! `v + Aᵀ(g - A v)` with no inner linear solve. The penalty is rescaled
//! adaptively from the primal/dual residual ratio, which removes the usual
//! sensitivity to the initial penalty choice.

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::ComplexField;
use crate::sensing::{MeasurementOperator, Measurements, ProjectedMeasurements, SensingPlan};
use crate::wavelet::idwt_into;

/// Penalty adaptation constants (residual-balancing rule).
const ADAPT_EVERY: usize = 10;
const ADAPT_RATIO: f64 = 10.0;
const ADAPT_FACTOR: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct BpConfig {
    /// Convergence tolerance on the scaled primal/dual residuals.
    pub feasibility_tol: f64,
    /// Iteration cap; hitting it yields `NotConverged` with the best iterate.
    pub max_iterations: usize,
    /// Initial ADMM penalty ρ.
    pub penalty: f64,
    /// Over-relaxation factor α in [1, 2); 1.6 is a good default.
    pub over_relaxation: f64,
}

impl Default for BpConfig {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-10,
            max_iterations: 50_000,
            penalty: 1.0,
            over_relaxation: 1.6,
        }
    }
}

impl BpConfig {
    pub fn validate(&self) -> Result<(), BpError> {
        if !self.feasibility_tol.is_finite() || self.feasibility_tol <= 0.0 {
            return Err(BpError::BadConfig("feasibility_tol must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(BpError::BadConfig("max_iterations must be at least 1"));
        }
        if !self.penalty.is_finite() || self.penalty <= 0.0 {
            return Err(BpError::BadConfig("penalty must be positive"));
        }
        if !(1.0..2.0).contains(&self.over_relaxation) {
            return Err(BpError::BadConfig("over_relaxation must be in [1, 2)"));
        }
        Ok(())
    }
}

/// Solution of one real-channel basis-pursuit problem.
#[derive(Debug, Clone, PartialEq)]
pub struct BpSolution {
    /// Recovered Haar coefficient vector (feasible: `A c = g` to roundoff).
    pub coefficients: Vec<f64>,
    pub iterations: usize,
    /// Scaled max(primal, dual) residual at exit.
    pub residual: f64,
    pub converged: bool,
}

#[derive(Debug, Error)]
pub enum BpError {
    #[error("measurement vector has {got} entries, operator expects {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error("invalid solver configuration: {0}")]
    BadConfig(&'static str),
    #[error("solver stopped after {} iterations with residual {:.3e}", .0.iterations, .0.residual)]
    NotConverged(Box<BpSolution>),
}

fn soft_threshold(v: f64, k: f64) -> f64 {
    if v > k {
        v - k
    } else if v < -k {
        v + k
    } else {
        0.0
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// ADMM basis pursuit against any orthonormal-row measurement operator.
pub fn basis_pursuit_with<Op: MeasurementOperator + ?Sized>(
    op: &Op,
    g: &[f64],
    cfg: &BpConfig,
) -> Result<BpSolution, BpError> {
    cfg.validate()?;
    if g.len() != op.measurement_len() {
        return Err(BpError::SizeMismatch {
            got: g.len(),
            expected: op.measurement_len(),
        });
    }
    let n = op.ambient_len();
    let scale = norm2(g).max(1.0);
    let mut rho = cfg.penalty;

    // min-norm feasible start
    let mut x = op.adjoint(g);
    let mut z = x.clone();
    let mut u = vec![0.0; n];
    let mut z_prev = vec![0.0; n];
    let mut v = vec![0.0; n];

    let mut iterations = 0;
    let mut residual = f64::INFINITY;
    let mut converged = false;

    while iterations < cfg.max_iterations {
        iterations += 1;

        // x-update: exact projection of (z - u) onto {c : A c = g}
        for i in 0..n {
            v[i] = z[i] - u[i];
        }
        let resid = {
            let av = op.apply(&v);
            let diff: Vec<f64> = g.iter().zip(&av).map(|(a, b)| a - b).collect();
            op.adjoint(&diff)
        };
        for i in 0..n {
            x[i] = v[i] + resid[i];
        }

        // z-update with over-relaxation, then dual update
        let alpha = cfg.over_relaxation;
        z_prev.copy_from_slice(&z);
        let kappa = 1.0 / rho;
        for i in 0..n {
            let xh = alpha * x[i] + (1.0 - alpha) * z_prev[i];
            z[i] = soft_threshold(xh + u[i], kappa);
            u[i] += xh - z[i];
        }

        let r_primal = x
            .iter()
            .zip(&z)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let r_dual = rho
            * z.iter()
                .zip(&z_prev)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
        residual = r_primal.max(r_dual) / scale;
        if residual <= cfg.feasibility_tol {
            converged = true;
            break;
        }

        // residual balancing: keep primal and dual residuals comparable
        if iterations % ADAPT_EVERY == 0 {
            if r_primal > ADAPT_RATIO * r_dual {
                rho *= ADAPT_FACTOR;
                for ui in u.iter_mut() {
                    *ui /= ADAPT_FACTOR;
                }
            } else if r_dual > ADAPT_RATIO * r_primal {
                rho /= ADAPT_FACTOR;
                for ui in u.iter_mut() {
                    *ui *= ADAPT_FACTOR;
                }
            }
        }
    }

    let solution = BpSolution {
        coefficients: x,
        iterations,
        residual,
        converged,
    };
    if converged {
        Ok(solution)
    } else {
        Err(BpError::NotConverged(Box::new(solution)))
    }
}

/// Basis pursuit from point samples under a sensing plan.
pub fn basis_pursuit(
    g: &[f64],
    plan: &SensingPlan,
    cfg: &BpConfig,
) -> Result<BpSolution, BpError> {
    basis_pursuit_with(plan, g, cfg)
}

/// Full recovery of a complex field from compressive measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    pub field: ComplexField,
    /// Recovered Haar coefficients of the real channel.
    pub real_coefficients: Vec<f64>,
    /// Recovered Haar coefficients of the imaginary channel.
    pub imag_coefficients: Vec<f64>,
    /// Worst channel iteration count.
    pub iterations: usize,
    /// Worst channel exit residual.
    pub residual: f64,
    pub converged: bool,
}

#[derive(Debug, Error)]
pub enum RecoveryError {
    #[error(transparent)]
    Solver(BpError),
    #[error("recovery stopped before convergence (residual {:.3e}); partial result attached", .0.residual)]
    NotConverged(Box<RecoveryResult>),
}

fn recover_channels<Op: MeasurementOperator>(
    op: &Op,
    meas_values: &[Complex64],
    grid: &crate::grid::Grid1D,
    time: f64,
    cfg: &BpConfig,
) -> Result<RecoveryResult, RecoveryError> {
    let g_re: Vec<f64> = meas_values.iter().map(|v| v.re).collect();
    let g_im: Vec<f64> = meas_values.iter().map(|v| v.im).collect();

    let run = |g: &[f64]| -> Result<BpSolution, RecoveryError> {
        match basis_pursuit_with(op, g, cfg) {
            Ok(sol) => Ok(sol),
            Err(BpError::NotConverged(sol)) => Ok(*sol),
            Err(e) => Err(RecoveryError::Solver(e)),
        }
    };
    let sol_re = run(&g_re)?;
    let sol_im = run(&g_im)?;

    let n = op.ambient_len();
    let mut signal_re = vec![0.0; n];
    let mut signal_im = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    idwt_into(&sol_re.coefficients, &mut signal_re, &mut scratch);
    idwt_into(&sol_im.coefficients, &mut signal_im, &mut scratch);
    let values: Vec<Complex64> = signal_re
        .into_iter()
        .zip(signal_im)
        .map(|(r, i)| Complex64::new(r, i))
        .collect();
    let field = ComplexField::new(grid.clone(), time, values)
        .expect("synthesized field matches the grid and is finite");

    let result = RecoveryResult {
        field,
        real_coefficients: sol_re.coefficients,
        imag_coefficients: sol_im.coefficients,
        iterations: sol_re.iterations.max(sol_im.iterations),
        residual: sol_re.residual.max(sol_im.residual),
        converged: sol_re.converged && sol_im.converged,
    };
    if result.converged {
        Ok(result)
    } else {
        Err(RecoveryError::NotConverged(Box::new(result)))
    }
}

/// Recover a field from point measurements: the real and imaginary channels
/// are solved independently and recombined on the original grid.
pub fn recover(meas: &Measurements, cfg: &BpConfig) -> Result<RecoveryResult, RecoveryError> {
    recover_channels(meas.plan(), meas.values(), meas.grid(), meas.time(), cfg)
}

/// Recover a field from random-projection measurements.
pub fn recover_projected(
    meas: &ProjectedMeasurements,
    cfg: &BpConfig,
) -> Result<RecoveryResult, RecoveryError> {
    recover_channels(
        meas.projection(),
        meas.values(),
        meas.grid(),
        meas.time(),
        cfg,
    )
}

impl RecoveryError {
    /// The recovered field regardless of convergence, when one exists.
    pub fn into_partial(self) -> Option<RecoveryResult> {
        match self {
            RecoveryError::NotConverged(r) => Some(*r),
            RecoveryError::Solver(_) => None,
        }
    }
}
