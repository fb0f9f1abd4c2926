//! File formats for every pipeline artifact.
//!
//! All CSVs use LF line endings, 17-significant-digit floats (which
//! round-trip `f64` exactly) and `#`-prefixed comment headers carrying the
//! metadata needed to reconstruct the object bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::detection::DetectionReport;
use crate::grid::{ComplexField, Grid1D};
use crate::sensing::{
    make_plan, random_projection, Measurements, ProjectedMeasurements, SensingPlan,
};
use crate::wavelet::Scaleogram;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
}

impl IoError {
    fn parse(path: &Path, line: usize, msg: impl Into<String>) -> Self {
        IoError::Parse {
            path: path.display().to_string(),
            line,
            msg: msg.into(),
        }
    }

    fn file(path: &Path, source: std::io::Error) -> Self {
        IoError::File {
            path: path.display().to_string(),
            source,
        }
    }
}

/// 17 significant digits: enough to reproduce any f64 bit-exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_atomic(path: &Path, content: &str) -> Result<(), IoError> {
    fs::write(path, content).map_err(|e| IoError::file(path, e))
}

fn parse_f64(path: &Path, line: usize, s: &str) -> Result<f64, IoError> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| IoError::parse(path, line, format!("bad float {s:?}: {e}")))
}

fn parse_usize(path: &Path, line: usize, s: &str) -> Result<usize, IoError> {
    s.trim()
        .parse::<usize>()
        .map_err(|e| IoError::parse(path, line, format!("bad integer {s:?}: {e}")))
}

/// Key=value pairs out of a `# k=v k=v ...` comment line.
fn comment_fields(line: &str) -> impl Iterator<Item = (&str, &str)> {
    line.trim_start_matches('#')
        .split_whitespace()
        .filter_map(|tok| tok.split_once('='))
}

// ---------------------------------------------------------------------------
// fields
// ---------------------------------------------------------------------------

/// Field CSV: comment header with grid and time, then `x,re,im,abs` rows.
pub fn write_field_csv(field: &ComplexField, path: &Path) -> Result<(), IoError> {
    let grid = field.grid();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# t={} n={} x_min={} x_max={}",
        fmt_f64(field.time()),
        grid.n_points(),
        fmt_f64(grid.x_min()),
        fmt_f64(grid.x_max())
    );
    out.push_str("x,re,im,abs\n");
    for (x, v) in grid.positions().zip(field.values()) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(x),
            fmt_f64(v.re),
            fmt_f64(v.im),
            fmt_f64(v.norm())
        );
    }
    write_atomic(path, &out)
}

pub fn read_field_csv(path: &Path) -> Result<ComplexField, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    let mut time = None;
    let mut n = None;
    let mut x_min = None;
    let mut x_max = None;
    let mut values: Vec<Complex64> = Vec::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            for (k, v) in comment_fields(rest) {
                match k {
                    "t" => time = Some(parse_f64(path, lineno, v)?),
                    "n" => n = Some(parse_usize(path, lineno, v)?),
                    "x_min" => x_min = Some(parse_f64(path, lineno, v)?),
                    "x_max" => x_max = Some(parse_f64(path, lineno, v)?),
                    _ => {}
                }
            }
            continue;
        }
        if line.starts_with("x,") {
            continue; // column header
        }
        let mut cols = line.split(',');
        let _x = cols
            .next()
            .ok_or_else(|| IoError::parse(path, lineno, "missing x column"))?;
        let re = parse_f64(
            path,
            lineno,
            cols.next()
                .ok_or_else(|| IoError::parse(path, lineno, "missing re column"))?,
        )?;
        let im = parse_f64(
            path,
            lineno,
            cols.next()
                .ok_or_else(|| IoError::parse(path, lineno, "missing im column"))?,
        )?;
        values.push(Complex64::new(re, im));
    }

    let time = time.ok_or_else(|| IoError::parse(path, 1, "missing '# t=...' header"))?;
    let n = n.unwrap_or(values.len());
    let x_min = x_min.ok_or_else(|| IoError::parse(path, 1, "missing x_min in header"))?;
    let x_max = x_max.ok_or_else(|| IoError::parse(path, 1, "missing x_max in header"))?;
    if n != values.len() {
        return Err(IoError::parse(
            path,
            1,
            format!("header says n={n} but found {} rows", values.len()),
        ));
    }
    let grid = Grid1D::new(n, x_min, x_max)
        .map_err(|e| IoError::parse(path, 1, format!("invalid grid: {e}")))?;
    ComplexField::new(grid, time, values)
        .map_err(|e| IoError::parse(path, 1, format!("invalid field: {e}")))
}

// ---------------------------------------------------------------------------
// sensing plans and measurements
// ---------------------------------------------------------------------------

/// Plan CSV: `# n=<N> m=<M> seed=<S>` comment, `index` header, one index per row.
pub fn write_plan_csv(plan: &SensingPlan, path: &Path) -> Result<(), IoError> {
    let mut out = String::new();
    let _ = writeln!(out, "# n={} m={} seed={}", plan.n(), plan.m(), plan.seed());
    out.push_str("index\n");
    for &j in plan.indices() {
        let _ = writeln!(out, "{j}");
    }
    write_atomic(path, &out)
}

pub fn read_plan_csv(path: &Path) -> Result<SensingPlan, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    let mut n = None;
    let mut m = None;
    let mut seed = None;
    let mut indices = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line == "index" {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            for (k, v) in comment_fields(rest) {
                match k {
                    "n" => n = Some(parse_usize(path, lineno, v)?),
                    "m" => m = Some(parse_usize(path, lineno, v)?),
                    "seed" => {
                        seed = Some(v.parse::<u64>().map_err(|e| {
                            IoError::parse(path, lineno, format!("bad seed {v:?}: {e}"))
                        })?)
                    }
                    _ => {}
                }
            }
            continue;
        }
        indices.push(parse_usize(path, lineno, line)?);
    }
    let n = n.ok_or_else(|| IoError::parse(path, 1, "missing n in header"))?;
    let m = m.ok_or_else(|| IoError::parse(path, 1, "missing m in header"))?;
    let seed = seed.ok_or_else(|| IoError::parse(path, 1, "missing seed in header"))?;
    let plan = make_plan(n, m, seed)
        .map_err(|e| IoError::parse(path, 1, format!("invalid plan header: {e}")))?;
    if plan.indices() != indices.as_slice() {
        return Err(IoError::parse(
            path,
            1,
            "stored indices do not match the (n, m, seed) regeneration",
        ));
    }
    Ok(plan)
}

/// Measurements CSV: metadata comment, then `index,re,im` rows.
pub fn write_measurements_csv(meas: &Measurements, path: &Path) -> Result<(), IoError> {
    let plan = meas.plan();
    let grid = meas.grid();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# kind=point n={} m={} seed={} t={} x_min={} x_max={}",
        plan.n(),
        plan.m(),
        plan.seed(),
        fmt_f64(meas.time()),
        fmt_f64(grid.x_min()),
        fmt_f64(grid.x_max())
    );
    out.push_str("index,re,im\n");
    for (&j, v) in plan.indices().iter().zip(meas.values()) {
        let _ = writeln!(out, "{},{},{}", j, fmt_f64(v.re), fmt_f64(v.im));
    }
    write_atomic(path, &out)
}

/// Projection measurements CSV: same row format, `index` is the projection
/// row number and the matrix is regenerated from `(n, m, seed)` on read.
pub fn write_projected_measurements_csv(
    meas: &ProjectedMeasurements,
    path: &Path,
) -> Result<(), IoError> {
    let proj = meas.projection();
    let grid = meas.grid();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# kind=projection n={} m={} seed={} t={} x_min={} x_max={}",
        proj.n(),
        proj.m(),
        proj.seed(),
        fmt_f64(meas.time()),
        fmt_f64(grid.x_min()),
        fmt_f64(grid.x_max())
    );
    out.push_str("index,re,im\n");
    for (k, v) in meas.values().iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", k, fmt_f64(v.re), fmt_f64(v.im));
    }
    write_atomic(path, &out)
}

/// Either measurement realization, as read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMeasurements {
    Point(Measurements),
    Projected(ProjectedMeasurements),
}

impl AnyMeasurements {
    pub fn grid(&self) -> &Grid1D {
        match self {
            AnyMeasurements::Point(m) => m.grid(),
            AnyMeasurements::Projected(m) => m.grid(),
        }
    }

    pub fn time(&self) -> f64 {
        match self {
            AnyMeasurements::Point(m) => m.time(),
            AnyMeasurements::Projected(m) => m.time(),
        }
    }
}

/// Read a measurements file of either kind (`kind=` tag; point when absent).
pub fn read_any_measurements_csv(path: &Path) -> Result<AnyMeasurements, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    let mut kind = "point".to_string();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            for (k, v) in comment_fields(rest) {
                if k == "kind" {
                    kind = v.to_string();
                }
            }
        }
    }
    match kind.as_str() {
        "point" => Ok(AnyMeasurements::Point(read_measurements_csv(path)?)),
        "projection" => Ok(AnyMeasurements::Projected(read_projected_measurements_csv(
            path,
        )?)),
        other => Err(IoError::parse(
            path,
            1,
            format!("unknown measurement kind {other:?}"),
        )),
    }
}

fn read_projected_measurements_csv(path: &Path) -> Result<ProjectedMeasurements, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    let (mut n, mut m, mut seed, mut t, mut x_min, mut x_max) =
        (None, None, None, None, None, None);
    let mut values: Vec<Complex64> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with("index,") {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            for (k, v) in comment_fields(rest) {
                match k {
                    "n" => n = Some(parse_usize(path, lineno, v)?),
                    "m" => m = Some(parse_usize(path, lineno, v)?),
                    "seed" => {
                        seed = Some(v.parse::<u64>().map_err(|e| {
                            IoError::parse(path, lineno, format!("bad seed {v:?}: {e}"))
                        })?)
                    }
                    "t" => t = Some(parse_f64(path, lineno, v)?),
                    "x_min" => x_min = Some(parse_f64(path, lineno, v)?),
                    "x_max" => x_max = Some(parse_f64(path, lineno, v)?),
                    _ => {}
                }
            }
            continue;
        }
        let mut cols = line.split(',');
        let _k = cols
            .next()
            .ok_or_else(|| IoError::parse(path, lineno, "missing index"))?;
        let re = parse_f64(
            path,
            lineno,
            cols.next()
                .ok_or_else(|| IoError::parse(path, lineno, "missing re"))?,
        )?;
        let im = parse_f64(
            path,
            lineno,
            cols.next()
                .ok_or_else(|| IoError::parse(path, lineno, "missing im"))?,
        )?;
        values.push(Complex64::new(re, im));
    }
    let n = n.ok_or_else(|| IoError::parse(path, 1, "missing n"))?;
    let m = m.ok_or_else(|| IoError::parse(path, 1, "missing m"))?;
    let seed = seed.ok_or_else(|| IoError::parse(path, 1, "missing seed"))?;
    let t = t.ok_or_else(|| IoError::parse(path, 1, "missing t"))?;
    let x_min = x_min.ok_or_else(|| IoError::parse(path, 1, "missing x_min"))?;
    let x_max = x_max.ok_or_else(|| IoError::parse(path, 1, "missing x_max"))?;
    let projection = random_projection(n, m, seed)
        .map_err(|e| IoError::parse(path, 1, format!("invalid projection: {e}")))?;
    let grid = Grid1D::new(n, x_min, x_max)
        .map_err(|e| IoError::parse(path, 1, format!("invalid grid: {e}")))?;
    ProjectedMeasurements::new(projection, grid, t, values)
        .map_err(|e| IoError::parse(path, 1, format!("inconsistent measurements: {e}")))
}

pub fn read_measurements_csv(path: &Path) -> Result<Measurements, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    let (mut n, mut m, mut seed, mut t, mut x_min, mut x_max) =
        (None, None, None, None, None, None);
    let mut rows: Vec<(usize, Complex64)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with("index,") {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            for (k, v) in comment_fields(rest) {
                match k {
                    "n" => n = Some(parse_usize(path, lineno, v)?),
                    "m" => m = Some(parse_usize(path, lineno, v)?),
                    "seed" => {
                        seed = Some(v.parse::<u64>().map_err(|e| {
                            IoError::parse(path, lineno, format!("bad seed {v:?}: {e}"))
                        })?)
                    }
                    "t" => t = Some(parse_f64(path, lineno, v)?),
                    "x_min" => x_min = Some(parse_f64(path, lineno, v)?),
                    "x_max" => x_max = Some(parse_f64(path, lineno, v)?),
                    _ => {}
                }
            }
            continue;
        }
        let mut cols = line.split(',');
        let j = parse_usize(
            path,
            lineno,
            cols.next()
                .ok_or_else(|| IoError::parse(path, lineno, "missing index"))?,
        )?;
        let re = parse_f64(
            path,
            lineno,
            cols.next()
                .ok_or_else(|| IoError::parse(path, lineno, "missing re"))?,
        )?;
        let im = parse_f64(
            path,
            lineno,
            cols.next()
                .ok_or_else(|| IoError::parse(path, lineno, "missing im"))?,
        )?;
        rows.push((j, Complex64::new(re, im)));
    }
    let n = n.ok_or_else(|| IoError::parse(path, 1, "missing n"))?;
    let m = m.ok_or_else(|| IoError::parse(path, 1, "missing m"))?;
    let seed = seed.ok_or_else(|| IoError::parse(path, 1, "missing seed"))?;
    let t = t.ok_or_else(|| IoError::parse(path, 1, "missing t"))?;
    let x_min = x_min.ok_or_else(|| IoError::parse(path, 1, "missing x_min"))?;
    let x_max = x_max.ok_or_else(|| IoError::parse(path, 1, "missing x_max"))?;

    let plan = make_plan(n, m, seed)
        .map_err(|e| IoError::parse(path, 1, format!("invalid plan: {e}")))?;
    let stored: Vec<usize> = rows.iter().map(|(j, _)| *j).collect();
    if plan.indices() != stored.as_slice() {
        return Err(IoError::parse(
            path,
            1,
            "stored indices do not match the (n, m, seed) regeneration",
        ));
    }
    let grid = Grid1D::new(n, x_min, x_max)
        .map_err(|e| IoError::parse(path, 1, format!("invalid grid: {e}")))?;
    Measurements::new(plan, grid, t, rows.into_iter().map(|(_, v)| v).collect())
        .map_err(|e| IoError::parse(path, 1, format!("inconsistent measurements: {e}")))
}

// ---------------------------------------------------------------------------
// scaleograms
// ---------------------------------------------------------------------------

/// Scaleogram CSV: corner cell `scale\position`, x-coordinates across the
/// first row, then one row of magnitudes per scale.
pub fn write_scaleogram_csv(sg: &Scaleogram, grid: &Grid1D, path: &Path) -> Result<(), IoError> {
    let mut out = String::new();
    out.push_str("scale\\position");
    for x in grid.positions() {
        let _ = write!(out, ",{}", fmt_f64(x));
    }
    out.push('\n');
    for (si, &a) in sg.scales().iter().enumerate() {
        let _ = write!(out, "{a}");
        for v in sg.row(si) {
            let _ = write!(out, ",{}", fmt_f64(*v));
        }
        out.push('\n');
    }
    write_atomic(path, &out)
}

/// Linear gray-map SVG of a scaleogram: min maps to white, max to black.
pub fn write_scaleogram_svg(sg: &Scaleogram, grid: &Grid1D, path: &Path) -> Result<(), IoError> {
    let cell_w = 1.0;
    let cell_h = 8.0;
    let width = sg.n_positions() as f64 * cell_w;
    let height = sg.n_scales() as f64 * cell_h;
    let max = sg.max_magnitude();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<desc>Haar scaleogram, scales {}..{}, x in [{}, {})</desc>"#,
        sg.scales().first().copied().unwrap_or(0),
        sg.scales().last().copied().unwrap_or(0),
        grid.x_min(),
        grid.x_max()
    );
    let _ = writeln!(
        out,
        r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##
    );
    for (si, row) in sg.rows().enumerate() {
        let y = si as f64 * cell_h;
        for (j, &v) in row.iter().enumerate() {
            let shade = if max > 0.0 { v / max } else { 0.0 };
            if shade <= 0.0 {
                continue; // white background already covers it
            }
            let level = (255.0 * (1.0 - shade)).round() as u8;
            let _ = writeln!(
                out,
                r##"<rect x="{:.1}" y="{y:.1}" width="{cell_w}" height="{cell_h}" fill="#{level:02x}{level:02x}{level:02x}"/>"##,
                j as f64 * cell_w
            );
        }
    }
    out.push_str("</svg>\n");
    write_atomic(path, &out)
}

// ---------------------------------------------------------------------------
// detection reports
// ---------------------------------------------------------------------------

pub const REPORT_CSV_HEADER: &str = "t,triangularity,apex_x,apex_confidence,alarm";

pub fn report_csv_row(t: f64, report: &DetectionReport) -> String {
    format!(
        "{},{},{},{},{}",
        fmt_f64(t),
        fmt_f64(report.triangularity),
        fmt_f64(report.apex_x),
        fmt_f64(report.apex_confidence),
        report.alarm
    )
}

/// Append one report row, writing the header first when the file is new.
pub fn append_report_csv(t: f64, report: &DetectionReport, path: &Path) -> Result<(), IoError> {
    let mut content = match fs::read_to_string(path) {
        Ok(existing) => existing,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            format!("{REPORT_CSV_HEADER}\n")
        }
        Err(e) => return Err(IoError::file(path, e)),
    };
    content.push_str(&report_csv_row(t, report));
    content.push('\n');
    write_atomic(path, &content)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soliton::{evaluate_field, SolitonKind};
    use crate::wavelet::{detection_scales, haar_cwt};

    fn tmpdir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "roguewave-io-test-{}-{:?}",
            std::process::id(),
            std::thread::current().id()
        ));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn f64_formatting_roundtrips_exactly() {
        for &x in &[
            0.0,
            -3.0,
            std::f64::consts::PI,
            1.0 / 3.0,
            9.15e-11,
            -7.91e-2,
            f64::MIN_POSITIVE,
            1.7976931348623157e308,
        ] {
            let s = fmt_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {s}");
        }
    }

    #[test]
    fn field_roundtrip_is_bit_exact() {
        let dir = tmpdir();
        let grid = Grid1D::default_analysis();
        let field = evaluate_field(SolitonKind::AkhmedievPeregrine, &grid, 3.0);
        let path = dir.join("field.csv");
        write_field_csv(&field, &path).unwrap();
        let back = read_field_csv(&path).unwrap();
        assert_eq!(back.grid(), field.grid());
        assert_eq!(back.time(), field.time());
        assert_eq!(back.values(), field.values());
        // emitting again produces byte-identical files
        let path2 = dir.join("field2.csv");
        write_field_csv(&back, &path2).unwrap();
        assert_eq!(fs::read(&path).unwrap(), fs::read(&path2).unwrap());
        let text = fs::read_to_string(&path).unwrap();
        assert!(!text.contains('\r'), "LF endings only");
        assert!(text.lines().nth(1).unwrap().starts_with("x,re,im,abs"));
    }

    #[test]
    fn plan_and_measurements_roundtrip() {
        let dir = tmpdir();
        let plan = crate::sensing::make_plan(1024, 64, 77).unwrap();
        let ppath = dir.join("plan.csv");
        write_plan_csv(&plan, &ppath).unwrap();
        assert_eq!(read_plan_csv(&ppath).unwrap(), plan);

        let grid = Grid1D::default_analysis();
        let field = evaluate_field(SolitonKind::Peregrine, &grid, 3.0);
        let meas = crate::sensing::sample(&field, &plan).unwrap();
        let mpath = dir.join("meas.csv");
        write_measurements_csv(&meas, &mpath).unwrap();
        let back = read_measurements_csv(&mpath).unwrap();
        assert_eq!(back, meas);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let dir = tmpdir();
        let path = dir.join("broken.csv");
        fs::write(
            &path,
            "# t=0.0e0 n=2 x_min=0.0e0 x_max=1.0e0\nx,re,im,abs\n0.0,1.0,0.0,1.0\n0.5,oops,0.0,1.0\n",
        )
        .unwrap();
        match read_field_csv(&path) {
            Err(IoError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn scaleogram_csv_and_svg() {
        let dir = tmpdir();
        let grid = Grid1D::new(64, -20.0, 20.0).unwrap();
        let field = evaluate_field(SolitonKind::Peregrine, &grid, 0.0);
        let dev = field.modulus_deviation();
        let sg = haar_cwt(&dev, &detection_scales(dev.len())).unwrap();
        let cpath = dir.join("sg.csv");
        write_scaleogram_csv(&sg, &grid, &cpath).unwrap();
        let text = fs::read_to_string(&cpath).unwrap();
        assert!(text.starts_with("scale\\position,"));
        assert_eq!(text.lines().count(), 1 + sg.n_scales());

        let spath = dir.join("sg.svg");
        write_scaleogram_svg(&sg, &grid, &spath).unwrap();
        let svg = fs::read_to_string(&spath).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn report_rows_append() {
        let dir = tmpdir();
        let path = dir.join("report.csv");
        let report = DetectionReport {
            triangularity: 0.9,
            apex_x: 0.02,
            apex_confidence: 0.99,
            alarm: true,
            threshold_used: 0.3,
        };
        append_report_csv(0.0, &report, &path).unwrap();
        append_report_csv(3.0, &report, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], REPORT_CSV_HEADER);
        assert!(lines[2].starts_with("3.0000000000000000e0,"));
    }
}
