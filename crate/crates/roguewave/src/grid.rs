//! Uniform spatial grids and complex envelope fields.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("grid extent is empty: x_min={x_min}, x_max={x_max}")]
    EmptyExtent { x_min: f64, x_max: f64 },
    #[error("grid bounds must be finite: x_min={x_min}, x_max={x_max}")]
    NonFiniteBounds { x_min: f64, x_max: f64 },
}

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("field has {got} values but the grid has {expected} points")]
    LengthMismatch { got: usize, expected: usize },
    #[error("field value at index {0} is not finite")]
    NonFinite(usize),
}

/// Uniform periodic discretization of `[x_min, x_max)` into `n_points` cells.
///
/// `x_max` itself is excluded: `x_j = x_min + j*dx` for `j = 0..n_points`.
/// The point count must be a power of two so that the Haar transform and the
/// spectral propagator apply directly.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    n_points: usize,
    x_min: f64,
    x_max: f64,
}

impl Grid1D {
    pub fn new(n_points: usize, x_min: f64, x_max: f64) -> Result<Self, GridError> {
        if n_points == 0 || !n_points.is_power_of_two() {
            return Err(GridError::NotPowerOfTwo(n_points));
        }
        if !x_min.is_finite() || !x_max.is_finite() {
            return Err(GridError::NonFiniteBounds { x_min, x_max });
        }
        if x_max <= x_min {
            return Err(GridError::EmptyExtent { x_min, x_max });
        }
        Ok(Self {
            n_points,
            x_min,
            x_max,
        })
    }

    /// Default analysis grid: `x ∈ [-20, 20)`, 1024 points. Both rational
    /// solitons decay close to the unit background at these edges.
    pub fn default_analysis() -> Self {
        Self::new(1024, -20.0, 20.0).expect("default grid parameters are valid")
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn extent(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.extent() / self.n_points as f64
    }

    pub fn position(&self, j: usize) -> f64 {
        self.x_min + self.dx() * j as f64
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.position(j))
    }
}

/// Complex envelope ψ sampled on a [`Grid1D`] at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid1D,
    time: f64,
    values: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: Grid1D, time: f64, values: Vec<Complex64>) -> Result<Self, FieldError> {
        if values.len() != grid.n_points() {
            return Err(FieldError::LengthMismatch {
                got: values.len(),
                expected: grid.n_points(),
            });
        }
        if let Some(bad) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(FieldError::NonFinite(bad));
        }
        Ok(Self { grid, time, values })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest modulus |ψ| over the grid.
    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Deviation of the modulus from the unit background, |ψ| - 1.
    pub fn modulus_deviation(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm() - 1.0).collect()
    }

    /// Real and imaginary channels as separate vectors.
    pub fn channels(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.values.iter().map(|v| v.re).collect(),
            self.values.iter().map(|v| v.im).collect(),
        )
    }

    /// Discrete L2 mass Σ|ψ_j|²·dx.
    pub fn l2_mass(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx()
    }
}
