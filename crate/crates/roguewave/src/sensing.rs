//! Compressive measurement of a field.
//!
//! Two measurement realizations are provided:
//!
//! * [`SensingPlan`] / [`sample`] — point sampling: a seeded random subset
//!   of grid indices, the "randomly positioned sensors" picture. The
//!   measurement matrix is a row-subsampled identity.
//! * [`RandomProjection`] / [`project`] — M dense random projections with
//!   orthonormalized rows. This realizes the textbook incoherent sensing
//!   ensemble; point sensors are near-maximally coherent with the Haar
//!   basis (see [`coherence`]), which caps what ℓ1 recovery can do with
//!   them, so the projection mode is what the recovery experiments use.
//!
//! Both are deterministic in `(n, m, seed)`.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::grid::{ComplexField, Grid1D};
use crate::wavelet::{dwt_into, haar_dwt};

#[derive(Debug, Error, PartialEq)]
pub enum SensingError {
    #[error("sample count {m} exceeds ambient length {n}")]
    MTooLarge { m: usize, n: usize },
    #[error("sample count must be at least 1")]
    EmptyPlan,
    #[error("ambient length {0} is not a power of two")]
    BadAmbientLength(usize),
    #[error("plan is for length {plan_n} but the field has {field_n} points")]
    PlanMismatch { plan_n: usize, field_n: usize },
    #[error("expected {expected} measurement values, got {got}")]
    ValueCountMismatch { expected: usize, got: usize },
}

/// A seeded draw of `m` distinct sensor indices in `[0, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingPlan {
    n: usize,
    m: usize,
    seed: u64,
    indices: Vec<usize>,
}

impl SensingPlan {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Strictly increasing sensor indices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// Draw `m` distinct indices uniformly without replacement from `[0, n)`.
///
/// A partial Fisher-Yates shuffle over a ChaCha20 stream keyed by `seed`;
/// regenerating with the same `(n, m, seed)` reproduces the plan exactly.
pub fn make_plan(n: usize, m: usize, seed: u64) -> Result<SensingPlan, SensingError> {
    if m == 0 {
        return Err(SensingError::EmptyPlan);
    }
    if m > n {
        return Err(SensingError::MTooLarge { m, n });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = i + (rng.next_u64() % (n - i) as u64) as usize;
        pool.swap(i, j);
    }
    let mut indices = pool[..m].to_vec();
    indices.sort_unstable();
    Ok(SensingPlan { n, m, seed, indices })
}

/// Point measurements of a field under a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurements {
    plan: SensingPlan,
    grid: Grid1D,
    time: f64,
    values: Vec<Complex64>,
}

impl Measurements {
    pub fn plan(&self) -> &SensingPlan {
        &self.plan
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

    pub fn new(
        plan: SensingPlan,
        grid: Grid1D,
        time: f64,
        values: Vec<Complex64>,
    ) -> Result<Self, SensingError> {
        if plan.n != grid.n_points() {
            return Err(SensingError::PlanMismatch {
                plan_n: plan.n,
                field_n: grid.n_points(),
            });
        }
        if values.len() != plan.m {
            return Err(SensingError::ValueCountMismatch {
                expected: plan.m,
                got: values.len(),
            });
        }
        Ok(Self {
            plan,
            grid,
            time,
            values,
        })
    }
}

/// Gather the field at the plan's sensor positions: `values[k] = ψ(x_{indices[k]})`.
pub fn sample(field: &ComplexField, plan: &SensingPlan) -> Result<Measurements, SensingError> {
    if plan.n != field.grid().n_points() {
        return Err(SensingError::PlanMismatch {
            plan_n: plan.n,
            field_n: field.grid().n_points(),
        });
    }
    let values = plan.indices.iter().map(|&j| field.values()[j]).collect();
    Ok(Measurements {
        plan: plan.clone(),
        grid: field.grid().clone(),
        time: field.time(),
        values,
    })
}

/// Mutual coherence diagnostic `√n · max |⟨e_j, h_k⟩|` between the selected
/// sensing rows and the Haar basis columns. Large values (the maximum is
/// `√(n/2)`) mean point sensors and Haar atoms align badly for CS.
pub fn coherence(plan: &SensingPlan) -> f64 {
    let n = plan.n;
    let mut unit = vec![0.0; n];
    let mut max_entry = 0.0f64;
    for &j in &plan.indices {
        unit[j] = 1.0;
        let coeffs = haar_dwt(&unit).expect("plan length is a power of two");
        for &c in coeffs.values() {
            max_entry = max_entry.max(c.abs());
        }
        unit[j] = 0.0;
    }
    (n as f64).sqrt() * max_entry
}

/// M dense random projections with orthonormalized rows, deterministic in
/// `(n, m, seed)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomProjection {
    n: usize,
    m: usize,
    seed: u64,
    rows: Vec<f64>, // m x n, row-major
}

impl RandomProjection {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.rows[k * self.n..(k + 1) * self.n]
    }

    /// y = Φ x
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.m)
            .map(|k| self.row(k).iter().zip(x).map(|(r, v)| r * v).sum())
            .collect()
    }

    /// x = Φᵀ y
    pub fn apply_transpose(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (k, &yk) in y.iter().enumerate() {
            for (o, &r) in out.iter_mut().zip(self.row(k)) {
                *o += r * yk;
            }
        }
        out
    }
}

/// Build a seeded Gaussian matrix and orthonormalize its rows (modified
/// Gram-Schmidt with one reorthogonalization pass).
pub fn random_projection(n: usize, m: usize, seed: u64) -> Result<RandomProjection, SensingError> {
    if m == 0 {
        return Err(SensingError::EmptyPlan);
    }
    if m > n {
        return Err(SensingError::MTooLarge { m, n });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut rows = vec![0.0; m * n];
    let mut pending = None;
    for slot in rows.iter_mut() {
        *slot = match pending.take() {
            Some(z) => z,
            None => {
                let (z0, z1) = gaussian_pair(&mut rng);
                pending = Some(z1);
                z0
            }
        };
    }

    // two passes of modified Gram-Schmidt keep ||Phi Phi^T - I|| near eps
    for _ in 0..2 {
        for i in 0..m {
            for j in 0..i {
                let dot: f64 = (0..n).map(|c| rows[i * n + c] * rows[j * n + c]).sum();
                for c in 0..n {
                    rows[i * n + c] -= dot * rows[j * n + c];
                }
            }
            let norm: f64 = (0..n)
                .map(|c| rows[i * n + c] * rows[i * n + c])
                .sum::<f64>()
                .sqrt();
            // a zero draw is not reachable in practice, but stay defined
            let inv = if norm > 0.0 { 1.0 / norm } else { 0.0 };
            for c in 0..n {
                rows[i * n + c] *= inv;
            }
        }
    }

    Ok(RandomProjection { n, m, seed, rows })
}

/// Box-Muller from the raw ChaCha stream; keeps the draw sequence
/// independent of rand's distribution internals.
fn gaussian_pair(rng: &mut ChaCha20Rng) -> (f64, f64) {
    let u1 = ((rng.next_u64() >> 11) as f64 + 1.0) / (1u64 << 53) as f64;
    let u2 = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    let r = (-2.0 * u1.ln()).sqrt();
    let th = 2.0 * std::f64::consts::PI * u2;
    (r * th.cos(), r * th.sin())
}

/// Projection measurements of a field: `values = Φ ψ` per complex channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedMeasurements {
    projection: RandomProjection,
    grid: Grid1D,
    time: f64,
    values: Vec<Complex64>,
}

impl ProjectedMeasurements {
    pub fn projection(&self) -> &RandomProjection {
        &self.projection
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

    pub fn new(
        projection: RandomProjection,
        grid: Grid1D,
        time: f64,
        values: Vec<Complex64>,
    ) -> Result<Self, SensingError> {
        if projection.n != grid.n_points() {
            return Err(SensingError::PlanMismatch {
                plan_n: projection.n,
                field_n: grid.n_points(),
            });
        }
        if values.len() != projection.m {
            return Err(SensingError::ValueCountMismatch {
                expected: projection.m,
                got: values.len(),
            });
        }
        Ok(Self {
            projection,
            grid,
            time,
            values,
        })
    }
}

pub fn project(
    field: &ComplexField,
    projection: &RandomProjection,
) -> Result<ProjectedMeasurements, SensingError> {
    if projection.n != field.grid().n_points() {
        return Err(SensingError::PlanMismatch {
            plan_n: projection.n,
            field_n: field.grid().n_points(),
        });
    }
    let (re, im) = field.channels();
    let g_re = projection.apply(&re);
    let g_im = projection.apply(&im);
    let values = g_re
        .into_iter()
        .zip(g_im)
        .map(|(r, i)| Complex64::new(r, i))
        .collect();
    Ok(ProjectedMeasurements {
        projection: projection.clone(),
        grid: field.grid().clone(),
        time: field.time(),
        values,
    })
}

/// Measurement operators usable by the basis-pursuit solver: the composition
/// "synthesize from Haar coefficients, then measure". All implementations
/// have orthonormal rows, which the solver's projection step relies on.
pub trait MeasurementOperator {
    /// Coefficient-space dimension N.
    fn ambient_len(&self) -> usize;
    /// Measurement count M.
    fn measurement_len(&self) -> usize;
    /// g = A c = measure(haar_idwt(c))
    fn apply(&self, coeffs: &[f64]) -> Vec<f64>;
    /// c = Aᵀ g = haar_dwt(measureᵀ(g))
    fn adjoint(&self, meas: &[f64]) -> Vec<f64>;
}

impl MeasurementOperator for SensingPlan {
    fn ambient_len(&self) -> usize {
        self.n
    }

    fn measurement_len(&self) -> usize {
        self.m
    }

    fn apply(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut signal = vec![0.0; self.n];
        let mut scratch = vec![0.0; self.n];
        crate::wavelet::idwt_into(coeffs, &mut signal, &mut scratch);
        self.indices.iter().map(|&j| signal[j]).collect()
    }

    fn adjoint(&self, meas: &[f64]) -> Vec<f64> {
        let mut signal = vec![0.0; self.n];
        for (&j, &v) in self.indices.iter().zip(meas) {
            signal[j] = v;
        }
        let mut out = vec![0.0; self.n];
        let mut scratch = vec![0.0; self.n];
        dwt_into(&signal, &mut out, &mut scratch);
        out
    }
}

impl MeasurementOperator for RandomProjection {
    fn ambient_len(&self) -> usize {
        self.n
    }

    fn measurement_len(&self) -> usize {
        self.m
    }

    fn apply(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut signal = vec![0.0; self.n];
        let mut scratch = vec![0.0; self.n];
        crate::wavelet::idwt_into(coeffs, &mut signal, &mut scratch);
        RandomProjection::apply(self, &signal)
    }

    fn adjoint(&self, meas: &[f64]) -> Vec<f64> {
        let signal = self.apply_transpose(meas);
        let mut out = vec![0.0; self.n];
        let mut scratch = vec![0.0; self.n];
        dwt_into(&signal, &mut out, &mut scratch);
        out
    }
}
