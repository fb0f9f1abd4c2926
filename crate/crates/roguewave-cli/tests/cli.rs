//! Black-box tests of the CLI binary: file outputs, determinism, exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_roguewave"))
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("roguewave-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().expect("binary runs");
    assert!(
        out.status.success(),
        "command failed: {:?}\nstdout: {}\nstderr: {}",
        cmd,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn max_abs_column(path: &Path) -> f64 {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('x'))
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .fold(0.0, f64::max)
}

#[test]
fn generate_is_deterministic_with_exact_peaks() {
    let dir = tmpdir("generate");
    let out1 = dir.join("a");
    let out2 = dir.join("b");
    for out in [&out1, &out2] {
        run(bin()
            .arg("generate")
            .args(["--soliton", "peregrine", "--t", "0", "--t", "3"])
            .arg("--out")
            .arg(out));
    }
    let f1 = out1.join("field_peregrine_t0.csv");
    assert!((max_abs_column(&f1) - 3.0).abs() < 1e-12);
    assert_eq!(
        fs::read(&f1).unwrap(),
        fs::read(out2.join("field_peregrine_t0.csv")).unwrap(),
        "same config must produce byte-identical files"
    );
    assert!(out1.join("field_peregrine_t3.csv").exists());

    run(bin()
        .arg("generate")
        .args(["--soliton", "ap", "--t", "0"])
        .arg("--out")
        .arg(&out1));
    assert!((max_abs_column(&out1.join("field_ap_t0.csv")) - 5.0).abs() < 1e-12);
}

#[test]
fn analyze_handles_constant_background() {
    let dir = tmpdir("analyze");
    // constant plane-wave background: every |psi| equals 1
    let n = 64;
    let mut csv = String::from("# t=0.0e0 n=64 x_min=-2.0e1 x_max=2.0e1\nx,re,im,abs\n");
    for j in 0..n {
        let x = -20.0 + 40.0 / n as f64 * j as f64;
        csv.push_str(&format!("{x:.16e},1.0,0.0,1.0\n"));
    }
    let field_path = dir.join("background.csv");
    fs::write(&field_path, csv).unwrap();

    run(bin()
        .arg("analyze")
        .arg("--field")
        .arg(&field_path)
        .arg("--out")
        .arg(&dir));
    let sg = fs::read_to_string(dir.join("scaleogram_background.csv")).unwrap();
    assert!(sg.starts_with("scale\\position"));
    // all magnitudes are zero
    for line in sg.lines().skip(1) {
        for cell in line.split(',').skip(1) {
            assert_eq!(cell.parse::<f64>().unwrap(), 0.0);
        }
    }
    assert!(dir.join("scaleogram_background.svg").exists());
}

#[test]
fn full_plan_recovery_roundtrip() {
    let dir = tmpdir("fullplan");
    run(bin()
        .arg("recover")
        .args(["--soliton", "peregrine", "--t", "1", "--n", "256", "--m", "256", "--seed", "4"])
        .arg("--out")
        .arg(&dir));
    let summary = fs::read_to_string(dir.join("summary.jsonl")).unwrap();
    let record: serde_json::Value = serde_json::from_str(summary.lines().next().unwrap()).unwrap();
    assert_eq!(record["m"], 256);
    assert_eq!(record["converged"], true);
    assert!(record["rms_vs_reference"].as_f64().unwrap() < 1e-10);
    assert!(record["coherence"].as_f64().unwrap() > 1.0);
    assert!(dir.join("recovered_peregrine_t1.csv").exists());
    assert!(dir.join("plan_peregrine_t1.csv").exists());
}

#[test]
fn sample_then_recover_from_file() {
    let dir = tmpdir("fromfile");
    run(bin()
        .arg("sample")
        .args(["--soliton", "ap", "--t", "0", "--n", "256", "--m", "64", "--seed", "9"])
        .args(["--sensing", "projection"])
        .arg("--out")
        .arg(&dir));
    let meas = dir.join("measurements_ap_t0.csv");
    assert!(meas.exists());
    run(bin()
        .arg("recover")
        .arg("--measurements")
        .arg(&meas)
        .args(["--soliton", "ap", "--max-iters", "1500"])
        .arg("--out")
        .arg(&dir));
    assert!(dir.join("recovered_measurements_ap_t0.csv").exists());
    let summary = fs::read_to_string(dir.join("summary.jsonl")).unwrap();
    let record: serde_json::Value = serde_json::from_str(summary.lines().next().unwrap()).unwrap();
    assert_eq!(record["sensing"], "projection");
    assert!(record["rms_vs_reference"].as_f64().is_some());
}

#[test]
fn detect_background_and_rogue() {
    let dir = tmpdir("detect");
    // degenerate background: no alarm, graceful row
    let n = 64;
    let mut csv = String::from("# t=0.0e0 n=64 x_min=-2.0e1 x_max=2.0e1\nx,re,im,abs\n");
    for j in 0..n {
        let x = -20.0 + 40.0 / n as f64 * j as f64;
        csv.push_str(&format!("{x:.16e},1.0,0.0,1.0\n"));
    }
    let bg = dir.join("bg.csv");
    fs::write(&bg, csv).unwrap();
    let out = run(bin().arg("detect").arg("--field").arg(&bg).arg("--out").arg(&dir));
    let row = String::from_utf8_lossy(&out.stdout);
    assert!(row.trim_end().ends_with("false"), "row: {row}");

    run(bin()
        .arg("generate")
        .args(["--soliton", "ap", "--t", "0"])
        .arg("--out")
        .arg(&dir));
    let out = run(bin()
        .arg("detect")
        .arg("--field")
        .arg(dir.join("field_ap_t0.csv"))
        .arg("--out")
        .arg(&dir));
    assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("true"));

    let table = fs::read_to_string(dir.join("detections.csv")).unwrap();
    assert_eq!(table.lines().count(), 3, "header plus two rows");
    assert!(table.starts_with("t,triangularity,apex_x,apex_confidence,alarm"));
}

#[test]
fn detect_carries_on_after_unconverged_recovery() {
    let dir = tmpdir("unconverged");
    // tiny iteration cap forces NotConverged; the pipeline still produces
    // a recovered field and a detection row
    run(bin()
        .arg("recover")
        .args(["--soliton", "peregrine", "--t", "3", "--n", "256", "--m", "32"])
        .args(["--seed", "3", "--max-iters", "40", "--sensing", "projection"])
        .arg("--out")
        .arg(&dir));
    let summary = fs::read_to_string(dir.join("summary.jsonl")).unwrap();
    let record: serde_json::Value = serde_json::from_str(summary.lines().next().unwrap()).unwrap();
    assert_eq!(record["converged"], false);
    run(bin()
        .arg("detect")
        .arg("--field")
        .arg(dir.join("recovered_peregrine_t3.csv"))
        .arg("--out")
        .arg(&dir));
    assert!(dir.join("detections.csv").exists());
}

#[test]
fn config_file_and_env_seed() {
    let dir = tmpdir("config");
    let cfg_path = dir.join("exp.cfg");
    fs::write(
        &cfg_path,
        "# comment line\nsoliton=ap\nn=128\nm=16\nt=0\nsensing=point\n",
    )
    .unwrap();
    run(bin()
        .arg("sample")
        .arg("--config")
        .arg(&cfg_path)
        .arg("--out")
        .arg(&dir)
        .env("ROGUEWAVE_SEED", "42"));
    let plan = fs::read_to_string(dir.join("plan_ap_t0.csv")).unwrap();
    assert!(plan.starts_with("# n=128 m=16 seed=42"), "plan: {plan}");

    // flags override the config file
    run(bin()
        .arg("sample")
        .arg("--config")
        .arg(&cfg_path)
        .args(["--seed", "7", "--soliton", "peregrine"])
        .arg("--out")
        .arg(&dir));
    let plan = fs::read_to_string(dir.join("plan_peregrine_t0.csv")).unwrap();
    assert!(plan.starts_with("# n=128 m=16 seed=7"), "plan: {plan}");
}

#[test]
fn resample_per_step_changes_the_layout() {
    let dir = tmpdir("resample");
    run(bin()
        .arg("sample")
        .args(["--n", "256", "--m", "16", "--seed", "5"])
        .args(["--t", "0", "--t", "3", "--resample-per-step"])
        .arg("--out")
        .arg(&dir));
    let p0 = fs::read_to_string(dir.join("plan_peregrine_t0.csv")).unwrap();
    let p3 = fs::read_to_string(dir.join("plan_peregrine_t3.csv")).unwrap();
    assert_ne!(p0, p3, "resampling must redraw the sensor layout");

    let dir2 = tmpdir("fixed");
    run(bin()
        .arg("sample")
        .args(["--n", "256", "--m", "16", "--seed", "5"])
        .args(["--t", "0", "--t", "3"])
        .arg("--out")
        .arg(&dir2));
    let q0 = fs::read_to_string(dir2.join("plan_peregrine_t0.csv")).unwrap();
    let q3 = fs::read_to_string(dir2.join("plan_peregrine_t3.csv")).unwrap();
    assert_eq!(q0, q3, "fixed layout is the default");
}

#[test]
fn reproduce_reports_honestly_and_deterministically() {
    let dir = tmpdir("reproduce");
    // full-fidelity run: t=3 cells must pass, t=0 cells cannot (see the
    // README's reproduction notes), so the exit code is nonzero
    let out = bin()
        .arg("reproduce")
        .args(["--seed", "0"])
        .arg("--out")
        .arg(dir.join("full"))
        .output()
        .expect("binary runs");
    assert!(!out.status.success(), "reproduce must flag failing rows");
    let txt = fs::read_to_string(dir.join("full/reproduce.txt")).unwrap();
    assert!(txt.contains("peregrine t=3"));
    assert!(txt.lines().any(|l| l.contains("t=3") && l.ends_with("pass")));
    assert!(txt.lines().any(|l| l.contains("t=0") && l.ends_with("FAIL")));
    let csv = fs::read_to_string(dir.join("full/reproduce.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7, "header, 4 cells, 2 ratio rows");

    // identical tables on identical seeds (reduced cap to keep this quick)
    for sub in ["r1", "r2"] {
        let _ = bin()
            .arg("reproduce")
            .args(["--seed", "11", "--max-iters", "150"])
            .arg("--out")
            .arg(dir.join(sub))
            .output()
            .expect("binary runs");
    }
    assert_eq!(
        fs::read(dir.join("r1/reproduce.csv")).unwrap(),
        fs::read(dir.join("r2/reproduce.csv")).unwrap()
    );
    assert_eq!(
        fs::read(dir.join("r1/reproduce.txt")).unwrap(),
        fs::read(dir.join("r2/reproduce.txt")).unwrap()
    );
}
