//! Statistical behavior of the ℓ1 recovery across sample counts and
//! measurement realizations.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use roguewave::detection::normalized_rms;
use roguewave::grid::Grid1D;
use roguewave::recovery::{
    basis_pursuit, basis_pursuit_with, recover_projected, BpConfig, BpError, RecoveryError,
};
use roguewave::sensing::{make_plan, project, random_projection};
use roguewave::soliton::{evaluate_field, SolitonKind};
use roguewave::wavelet::{haar_idwt, DwtCoefficients};

/// K unit-magnitude spikes with random signs on a random support.
fn planted_coefficients(n: usize, k: usize, seed: u64) -> Vec<f64> {
    // separate stream from the measurement seed
    let mut rng = ChaCha20Rng::seed_from_u64(0x504c414e54 ^ seed);
    let mut coeffs = vec![0.0; n];
    let mut placed = 0;
    while placed < k {
        let idx = (rng.next_u64() % n as u64) as usize;
        if coeffs[idx] == 0.0 {
            coeffs[idx] = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
            placed += 1;
        }
    }
    coeffs
}

fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt();
    let den: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    num / den
}

fn unwrap_solution(
    r: Result<roguewave::recovery::BpSolution, BpError>,
) -> roguewave::recovery::BpSolution {
    match r {
        Ok(s) => s,
        Err(BpError::NotConverged(s)) => *s,
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn point_sampling_cannot_recover_planted_spectra() {
    // point sensors are near-maximally coherent with the Haar basis
    // (coherence sqrt(n/2)); fine-scale atoms that no sensor touches are
    // invisible, so planted-support recovery fails almost always.
    // Measured: 0 of 100 seeds succeed at K=10, N=256, M=80.
    let (n, k, m) = (256usize, 10usize, 80usize);
    let cfg = BpConfig::default();
    let mut successes = 0;
    for seed in 0..100u64 {
        let truth = planted_coefficients(n, k, seed);
        let signal = haar_idwt(&DwtCoefficients::new(truth.clone()).unwrap());
        let plan = make_plan(n, m, seed).unwrap();
        let g: Vec<f64> = plan.indices().iter().map(|&j| signal[j]).collect();
        let sol = unwrap_solution(basis_pursuit(&g, &plan, &cfg));
        if rel_err(&sol.coefficients, &truth) < 1e-6 {
            successes += 1;
        }
    }
    println!("planted point-sampling successes: {successes}/100");
    assert!(successes < 50, "coherence-limited rate: {successes}/100");
}

#[test]
fn recovery_error_decreases_with_sample_count() {
    // median over 50 seeds is non-increasing in M on the Peregrine t=0
    // problem (random-projection measurements)
    let grid = Grid1D::default_analysis();
    let field = evaluate_field(SolitonKind::Peregrine, &grid, 0.0);
    let cfg = BpConfig {
        max_iterations: 2000,
        ..BpConfig::default()
    };
    let mut medians = Vec::new();
    for m in [32usize, 64, 128, 256] {
        let mut errs: Vec<f64> = (0..50u64)
            .map(|seed| {
                let proj = random_projection(1024, m, seed).unwrap();
                let meas = project(&field, &proj).unwrap();
                let rec = match recover_projected(&meas, &cfg) {
                    Ok(r) => r,
                    Err(RecoveryError::NotConverged(r)) => *r,
                    Err(e) => panic!("{e}"),
                };
                normalized_rms(&rec.field, &field).unwrap()
            })
            .collect();
        errs.sort_by(f64::total_cmp);
        medians.push(errs[25]);
    }
    println!("medians over M=32,64,128,256: {medians:?}");
    for w in medians.windows(2) {
        assert!(w[1] <= w[0] * 1.001, "not monotone: {medians:?}");
    }
}

#[test]
fn projected_full_rank_square_system_is_exact() {
    // m = n projection: the constraint determines the coefficients uniquely
    let n = 256;
    let grid = Grid1D::new(n, -20.0, 20.0).unwrap();
    let field = evaluate_field(SolitonKind::Peregrine, &grid, 1.0);
    let proj = random_projection(n, n, 3).unwrap();
    let meas = project(&field, &proj).unwrap();
    let rec = match recover_projected(&meas, &BpConfig::default()) {
        Ok(r) => r,
        Err(RecoveryError::NotConverged(r)) => *r,
        Err(e) => panic!("{e}"),
    };
    let rms = normalized_rms(&rec.field, &field).unwrap();
    assert!(rms < 1e-10, "square-system rms {rms}");
}

#[test]
fn planted_recovery_transitions_with_m() {
    // quick view of the phase transition the acceptance suite pins down:
    // abundant projections succeed, scarce ones cannot
    let (n, k) = (256usize, 10usize);
    let cfg = BpConfig::default();
    let mut ok_rich = 0;
    let mut ok_poor = 0;
    for seed in 0..20u64 {
        let truth = planted_coefficients(n, k, seed);
        let signal = haar_idwt(&DwtCoefficients::new(truth.clone()).unwrap());
        for (m, ok) in [(80usize, &mut ok_rich), (20usize, &mut ok_poor)] {
            let proj = random_projection(n, m, seed).unwrap();
            let g = proj.apply(&signal);
            let capped = BpConfig {
                max_iterations: 3000,
                ..cfg.clone()
            };
            let sol = unwrap_solution(basis_pursuit_with(&proj, &g, &capped));
            if rel_err(&sol.coefficients, &truth) < 1e-6 {
                *ok += 1;
            }
        }
    }
    println!("planted projections: M=80 {ok_rich}/20, M=20 {ok_poor}/20");
    assert!(ok_rich >= 18);
    assert!(ok_poor <= 2);
}
