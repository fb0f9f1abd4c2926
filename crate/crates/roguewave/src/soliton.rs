//! Closed-form rational soliton solutions of the focusing NLSE.
//!
//! These are the standard rogue-wave models: the first-order Peregrine
//! soliton (peak amplitude 3 over the unit background) and the second-order
//! Akhmediev-Peregrine soliton (peak amplitude 5). Both are exact solutions
//! of `i ψ_t + ½ ψ_xx + |ψ|² ψ = 0` and decay to the plane-wave background
//! `exp(it)` as |x| → ∞.

use num_complex::Complex64;

use crate::grid::{ComplexField, Grid1D};

/// Which rational soliton to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolitonKind {
    Peregrine,
    AkhmedievPeregrine,
}

impl SolitonKind {
    pub fn evaluate(self, x: f64, t: f64) -> Complex64 {
        match self {
            SolitonKind::Peregrine => peregrine(x, t),
            SolitonKind::AkhmedievPeregrine => akhmediev_peregrine(x, t),
        }
    }
}

/// First-order rational soliton: `[1 - 4(1 + 2it)/(1 + 4x² + 4t²)]·exp(it)`.
///
/// The denominator is ≥ 1 for all real (x, t), so the function is total.
pub fn peregrine(x: f64, t: f64) -> Complex64 {
    let denom = 1.0 + 4.0 * x * x + 4.0 * t * t;
    let rational = Complex64::new(1.0, 2.0 * t) * (4.0 / denom);
    (Complex64::new(1.0, 0.0) - rational) * Complex64::from_polar(1.0, t)
}

/// Second-order rational soliton: `[1 + (G₂ + i·t·H₂)/D₂]·exp(it)`.
pub fn akhmediev_peregrine(x: f64, t: f64) -> Complex64 {
    let x2 = x * x;
    let x4 = x2 * x2;
    let x6 = x4 * x2;
    let t2 = t * t;
    let t4 = t2 * t2;
    let t6 = t4 * t2;

    let g2 = 3.0 / 8.0 - 3.0 * x2 - 2.0 * x4 - 9.0 * t2 - 10.0 * t4 - 12.0 * x2 * t2;
    let h2 = 15.0 / 4.0 + 6.0 * x2 - 4.0 * x4 - 2.0 * t2 - 4.0 * t4 - 8.0 * x2 * t2;
    let d2 = 0.125
        * (0.75 + 9.0 * x2 + 4.0 * x4 + 16.0 / 3.0 * x6 + 33.0 * t2 + 36.0 * t4
            + 16.0 / 3.0 * t6
            - 24.0 * t2 * x2
            + 16.0 * t2 * x4
            + 16.0 * t4 * x2);

    let rational = Complex64::new(g2, t * h2) / d2;
    (Complex64::new(1.0, 0.0) + rational) * Complex64::from_polar(1.0, t)
}

/// Evaluate the selected closed form pointwise on a grid.
pub fn evaluate_field(kind: SolitonKind, grid: &Grid1D, t: f64) -> ComplexField {
    let values = grid.positions().map(|x| kind.evaluate(x, t)).collect();
    ComplexField::new(grid.clone(), t, values)
        .expect("closed-form soliton values are finite on a valid grid")
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // reference values frozen at 20 digits
mod tests {
    use super::*;

    fn assert_close(a: Complex64, re: f64, im: f64, tol: f64) {
        assert!(
            (a.re - re).abs() <= tol && (a.im - im).abs() <= tol,
            "got {a}, want {re}+{im}i"
        );
    }

    #[test]
    fn peregrine_peak_is_minus_three() {
        let v = peregrine(0.0, 0.0);
        assert_close(v, -3.0, 0.0, 0.0);
        assert_eq!(v.norm(), 3.0);
    }

    #[test]
    fn peregrine_half_x_axis_zero_crossing_side() {
        // 1 + 4*(0.5)^2 = 2, so ψ = 1 - 4/2 = -1
        assert_close(peregrine(0.5, 0.0), -1.0, 0.0, 0.0);
    }

    #[test]
    fn peregrine_background_limit() {
        for x in [1e3, 1e4, -1e5] {
            let v = peregrine(x, 0.0);
            assert!((v.re - 1.0).abs() < 1e-5 && v.im.abs() < 1e-5);
        }
    }

    #[test]
    fn peregrine_high_precision_reference() {
        // 50-digit evaluation of the closed form at (0, 3)
        let v = peregrine(0.0, 3.0);
        assert_close(v, -0.79142897822642937188, 0.76802108606449484605, 1e-15);
        assert!((v.norm() - 1.1028219331407116226).abs() < 1e-15);
        // and at (1.25, -2)
        let w = peregrine(1.25, -2.0);
        assert_close(w, 0.28120138605068456674, -1.0392397785440279926, 1e-15);
    }

    #[test]
    fn ap_peak_is_five() {
        // G2(0,0)=3/8, D2(0,0)=3/32, ratio 4, so ψ = 5
        let v = akhmediev_peregrine(0.0, 0.0);
        assert_close(v, 5.0, 0.0, 0.0);
        assert_eq!(v.norm(), 5.0);
    }

    #[test]
    fn ap_background_limit() {
        for x in [1e3, -1e4] {
            let v = akhmediev_peregrine(x, 0.0);
            assert!((v.re - 1.0).abs() < 1e-4 && v.im.abs() < 1e-4);
        }
    }

    #[test]
    fn ap_high_precision_reference() {
        // 50-digit evaluation of G2, H2, D2 at (1, 1) and (0.75, 2)
        let v = akhmediev_peregrine(1.0, 1.0);
        assert_close(v, -0.43043628583373686456, -1.8748397746749076913, 1e-14);
        let w = akhmediev_peregrine(0.75, 2.0);
        assert_close(w, 1.2736492068879114081, -0.012328157010597531682, 1e-14);
    }

    #[test]
    fn modulus_is_even_in_x_and_t() {
        for &(x, t) in &[(0.3, 1.7), (2.0, 0.4), (5.5, 3.0), (0.01, 12.0)] {
            for (f, _) in [
                (peregrine as fn(f64, f64) -> Complex64, "peregrine"),
                (akhmediev_peregrine, "ap"),
            ] {
                let m = f(x, t).norm();
                assert_eq!(f(-x, t).norm(), m);
                assert_eq!(f(x, -t).norm(), m);
            }
        }
    }

    #[test]
    fn field_peaks_on_default_grid() {
        let grid = Grid1D::default_analysis();
        let p = evaluate_field(SolitonKind::Peregrine, &grid, 0.0);
        assert!((p.max_modulus() - 3.0).abs() < 1e-12);
        let a = evaluate_field(SolitonKind::AkhmedievPeregrine, &grid, 0.0);
        assert!((a.max_modulus() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn time_reversal_modulus_profile() {
        let grid = Grid1D::default_analysis();
        let fwd = evaluate_field(SolitonKind::Peregrine, &grid, 3.0);
        let bwd = evaluate_field(SolitonKind::Peregrine, &grid, -3.0);
        for (a, b) in fwd.values().iter().zip(bwd.values()) {
            assert_eq!(a.norm_sqr(), b.norm_sqr());
        }
    }
}
