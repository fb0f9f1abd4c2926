//! Reconstruction and early detection of vibrational rogue-wave envelopes.
//!
//! The library covers the full measurement pipeline for rogue waves modeled
//! as rational solitons of the focusing nonlinear Schrödinger equation:
//!
//! * [`grid`] — uniform 1D spatial grids and complex envelope fields;
//! * [`soliton`] — closed-form Peregrine and Akhmediev-Peregrine fields;
//! * [`nlse`] — split-step spectral propagation, used as an independent
//!   check on the closed forms;
//! * [`wavelet`] — orthonormal Haar DWT (the sparsity basis) and the
//!   multi-scale Haar scaleogram (the triangular-spectrum diagnostic);
//! * [`sensing`] — seeded sensor plans, point sampling and random
//!   projection measurements;
//! * [`recovery`] — equality-constrained ℓ1 basis pursuit and field
//!   recovery from compressive measurements;
//! * [`detection`] — triangularity scoring, emergence-point localization
//!   and alarm decisions;
//! * [`io`] — CSV/SVG serialization of every pipeline artifact.

pub mod detection;
pub mod grid;
pub mod io;
pub mod nlse;
pub mod recovery;
pub mod sensing;
pub mod soliton;
pub mod wavelet;

pub use grid::{ComplexField, Grid1D};
pub use soliton::SolitonKind;
