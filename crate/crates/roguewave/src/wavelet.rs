//! Orthonormal Haar transforms.
//!
//! Two distinct tools share the Haar mother wavelet here:
//!
//! * [`haar_dwt`] / [`haar_idwt`] — the orthonormal discrete wavelet
//!   transform used as the sparsity basis of the ℓ1 recovery problem.
//!   Full decomposition depth, exactly invertible.
//! * [`haar_cwt`] — an integer-dilated continuous-style transform over a
//!   set of scales, producing the magnitude scaleogram whose triangular
//!   (V-shaped) signature marks an emerging rogue wave.

use std::f64::consts::FRAC_1_SQRT_2;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WaveletError {
    #[error("signal length {0} is not a power of two >= 2")]
    LengthNotPowerOfTwo(usize),
    #[error("scale {scale} out of range for signal length {len} (valid: 1..={max})")]
    ScaleOutOfRange { scale: usize, len: usize, max: usize },
    #[error("scale list is empty")]
    NoScales,
}

/// Full-depth orthonormal Haar coefficients.
///
/// Layout: `[approximation, coarsest detail, ..., finest details]`, so the
/// detail block for level `l` (0 = coarsest) occupies `2^l..2^(l+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DwtCoefficients {
    values: Vec<f64>,
}

impl DwtCoefficients {
    pub fn new(values: Vec<f64>) -> Result<Self, WaveletError> {
        if values.len() < 2 || !values.len().is_power_of_two() {
            return Err(WaveletError::LengthNotPowerOfTwo(values.len()));
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Approximation coefficient (index 0).
    pub fn approximation(&self) -> f64 {
        self.values[0]
    }
}

/// One analysis level: pairs `(a, b)` map to `((a+b)/√2, (a-b)/√2)`.
/// `buf[..len]` holds the running approximation; details land behind it.
fn analysis_pass(buf: &mut [f64], scratch: &mut [f64], len: usize) {
    let half = len / 2;
    for i in 0..half {
        let a = buf[2 * i];
        let b = buf[2 * i + 1];
        scratch[i] = (a + b) * FRAC_1_SQRT_2;
        scratch[half + i] = (a - b) * FRAC_1_SQRT_2;
    }
    buf[..len].copy_from_slice(&scratch[..len]);
}

fn synthesis_pass(buf: &mut [f64], scratch: &mut [f64], len: usize) {
    for i in 0..len {
        let a = buf[i];
        let d = buf[len + i];
        scratch[2 * i] = (a + d) * FRAC_1_SQRT_2;
        scratch[2 * i + 1] = (a - d) * FRAC_1_SQRT_2;
    }
    buf[..2 * len].copy_from_slice(&scratch[..2 * len]);
}

pub(crate) fn dwt_into(signal: &[f64], out: &mut [f64], scratch: &mut [f64]) {
    out.copy_from_slice(signal);
    let mut len = signal.len();
    while len > 1 {
        analysis_pass(out, scratch, len);
        len /= 2;
    }
}

pub(crate) fn idwt_into(coeffs: &[f64], out: &mut [f64], scratch: &mut [f64]) {
    out.copy_from_slice(coeffs);
    let mut len = 1;
    while len < coeffs.len() {
        synthesis_pass(out, scratch, len);
        len *= 2;
    }
}

/// Orthonormal full-depth Haar analysis. The length must be a power of two.
pub fn haar_dwt(signal: &[f64]) -> Result<DwtCoefficients, WaveletError> {
    if signal.len() < 2 || !signal.len().is_power_of_two() {
        return Err(WaveletError::LengthNotPowerOfTwo(signal.len()));
    }
    let mut out = vec![0.0; signal.len()];
    let mut scratch = vec![0.0; signal.len()];
    dwt_into(signal, &mut out, &mut scratch);
    Ok(DwtCoefficients { values: out })
}

/// Exact inverse of [`haar_dwt`].
pub fn haar_idwt(coeffs: &DwtCoefficients) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len()];
    let mut scratch = vec![0.0; coeffs.len()];
    idwt_into(&coeffs.values, &mut out, &mut scratch);
    out
}

/// Magnitude scaleogram: |Haar CWT| over `scales.len()` rows by signal
/// length columns. Row order follows the input scale list.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaleogram {
    scales: Vec<usize>,
    n_positions: usize,
    magnitudes: Vec<f64>,
}

impl Scaleogram {
    pub fn scales(&self) -> &[usize] {
        &self.scales
    }

    pub fn n_positions(&self) -> usize {
        self.n_positions
    }

    pub fn n_scales(&self) -> usize {
        self.scales.len()
    }

    pub fn row(&self, scale_index: usize) -> &[f64] {
        let s = scale_index * self.n_positions;
        &self.magnitudes[s..s + self.n_positions]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.magnitudes.chunks_exact(self.n_positions)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.magnitudes.iter().copied().fold(0.0, f64::max)
    }
}

/// Scales 1..=32, the range used throughout the rogue-wave analysis.
pub fn detection_scales(signal_len: usize) -> Vec<usize> {
    (1..=32.min(signal_len / 2)).collect()
}

/// Haar scaleogram of a real signal.
///
/// At scale `a` the signal is correlated with the integer-dilated Haar
/// wavelet: +1 on the `a` samples left of the center, -1 on the `a`
/// samples from the center on, normalized by `1/√(2a)`. The signal is
/// extended symmetrically (half-sample reflection) at both ends, and the
/// coefficient magnitude is stored.
pub fn haar_cwt(signal: &[f64], scales: &[usize]) -> Result<Scaleogram, WaveletError> {
    if scales.is_empty() {
        return Err(WaveletError::NoScales);
    }
    let n = signal.len();
    let max_allowed = n / 2;
    for &a in scales {
        if a == 0 || a > max_allowed {
            return Err(WaveletError::ScaleOutOfRange {
                scale: a,
                len: n,
                max: max_allowed,
            });
        }
    }
    let pad = *scales.iter().max().expect("non-empty scales");

    // half-sample symmetric extension: ... s1 s0 | s0 s1 ... sN-1 | sN-1 ...
    let mut ext = Vec::with_capacity(n + 2 * pad);
    ext.extend(signal[..pad].iter().rev());
    ext.extend_from_slice(signal);
    ext.extend(signal[n - pad..].iter().rev());

    // prefix[i] = sum of ext[..i]; block sums become two lookups
    let mut prefix = Vec::with_capacity(ext.len() + 1);
    let mut acc = 0.0;
    prefix.push(0.0);
    for &v in &ext {
        acc += v;
        prefix.push(acc);
    }

    let mut magnitudes = vec![0.0; scales.len() * n];
    for (si, &a) in scales.iter().enumerate() {
        let norm = 1.0 / (2.0 * a as f64).sqrt();
        let row = &mut magnitudes[si * n..(si + 1) * n];
        for (j, slot) in row.iter_mut().enumerate() {
            let c = j + pad;
            let left = prefix[c] - prefix[c - a];
            let right = prefix[c + a] - prefix[c];
            *slot = (norm * (left - right)).abs();
        }
    }

    Ok(Scaleogram {
        scales: scales.to_vec(),
        n_positions: n,
        magnitudes,
    })
}
