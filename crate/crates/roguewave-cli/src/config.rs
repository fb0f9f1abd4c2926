//! Experiment configuration: defaults, flat key=value config files, flag
//! overrides, and the `ROGUEWAVE_SEED` environment fallback.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use roguewave::detection::DEFAULT_ALARM_THRESHOLD;
use roguewave::grid::Grid1D;
use roguewave::recovery::BpConfig;
use roguewave::soliton::SolitonKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SolitonArg {
    Peregrine,
    Ap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SensingArg {
    /// Point samples at randomly positioned sensors (subsampled identity).
    Point,
    /// Dense random projections with orthonormal rows.
    Projection,
}

/// Flags shared by every subcommand; unset values fall back to the config
/// file, then to the built-in defaults.
#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Flat key=value config file; flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Soliton kind
    #[arg(long, value_enum)]
    pub soliton: Option<SolitonArg>,

    /// Grid size (power of two)
    #[arg(long)]
    pub n: Option<usize>,

    /// Left grid edge
    #[arg(long)]
    pub xmin: Option<f64>,

    /// Right grid edge (excluded point)
    #[arg(long)]
    pub xmax: Option<f64>,

    /// Time value; repeat for several snapshots
    #[arg(long = "t", action = clap::ArgAction::Append, allow_negative_numbers = true)]
    pub times: Vec<f64>,

    /// Number of compressive measurements
    #[arg(long)]
    pub m: Option<usize>,

    /// RNG seed (falls back to ROGUEWAVE_SEED, then 0)
    #[arg(long)]
    pub seed: Option<u64>,

    /// Solver feasibility tolerance
    #[arg(long)]
    pub tol: Option<f64>,

    /// Solver iteration cap
    #[arg(long)]
    pub max_iters: Option<usize>,

    /// Alarm threshold on the triangularity score
    #[arg(long)]
    pub threshold: Option<f64>,

    /// Draw a fresh sensor layout at every time step instead of keeping
    /// one fixed layout
    #[arg(long)]
    pub resample_per_step: bool,

    /// Measurement realization
    #[arg(long, value_enum)]
    pub sensing: Option<SensingArg>,

    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sensing {
    Point,
    Projection,
}

impl Sensing {
    pub fn name(self) -> &'static str {
        match self {
            Sensing::Point => "point",
            Sensing::Projection => "projection",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub soliton: SolitonKind,
    pub n: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub times: Vec<f64>,
    pub m: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_iters: Option<usize>,
    pub threshold: f64,
    pub resample_per_step: bool,
    pub sensing: Sensing,
    pub out: PathBuf,
}

impl ExperimentConfig {
    pub fn soliton_name(&self) -> &'static str {
        match self.soliton {
            SolitonKind::Peregrine => "peregrine",
            SolitonKind::AkhmedievPeregrine => "ap",
        }
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.n, self.x_min, self.x_max).context("invalid grid parameters")
    }

    /// Solver settings; `default_cap` applies when --max-iters is not given
    /// (subcommands pick their own default).
    pub fn bp_config(&self, default_cap: usize) -> BpConfig {
        BpConfig {
            feasibility_tol: self.tol,
            max_iterations: self.max_iters.unwrap_or(default_cap),
            ..BpConfig::default()
        }
    }

    /// Sensor seed for a time-step index under the resampling policy.
    pub fn seed_for_step(&self, step: usize) -> u64 {
        if self.resample_per_step {
            self.seed.wrapping_add(step as u64)
        } else {
            self.seed
        }
    }
}

/// Raw key=value pairs from a config file.
fn parse_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut pairs = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("{}:{}: expected key=value", path.display(), idx + 1);
        };
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

pub fn resolve(args: &CommonArgs) -> Result<ExperimentConfig> {
    // defaults
    let mut soliton = SolitonKind::Peregrine;
    let mut n = 1024usize;
    let mut x_min = -20.0;
    let mut x_max = 20.0;
    let mut times: Vec<f64> = Vec::new();
    let mut m = 64usize;
    let mut seed: Option<u64> = None;
    let mut tol = 1e-10;
    let mut max_iters: Option<usize> = None;
    let mut threshold = DEFAULT_ALARM_THRESHOLD;
    let mut resample = false;
    let mut sensing = Sensing::Point;
    let mut out = PathBuf::from("out");

    // config file layer
    if let Some(path) = &args.config {
        for (k, v) in parse_config_file(path)? {
            match k.as_str() {
                "soliton" => {
                    soliton = match v.as_str() {
                        "peregrine" => SolitonKind::Peregrine,
                        "ap" => SolitonKind::AkhmedievPeregrine,
                        other => bail!("config: unknown soliton {other:?}"),
                    }
                }
                "n" => n = v.parse().context("config: bad n")?,
                "xmin" => x_min = v.parse().context("config: bad xmin")?,
                "xmax" => x_max = v.parse().context("config: bad xmax")?,
                "t" => {
                    for part in v.split(',') {
                        times.push(part.trim().parse().context("config: bad t")?);
                    }
                }
                "m" => m = v.parse().context("config: bad m")?,
                "seed" => seed = Some(v.parse().context("config: bad seed")?),
                "tol" => tol = v.parse().context("config: bad tol")?,
                "max-iters" => max_iters = Some(v.parse().context("config: bad max-iters")?),
                "threshold" => threshold = v.parse().context("config: bad threshold")?,
                "resample-per-step" => {
                    resample = v.parse().context("config: bad resample-per-step")?
                }
                "sensing" => {
                    sensing = match v.as_str() {
                        "point" => Sensing::Point,
                        "projection" => Sensing::Projection,
                        other => bail!("config: unknown sensing {other:?}"),
                    }
                }
                "out" => out = PathBuf::from(v),
                other => bail!("config: unknown key {other:?}"),
            }
        }
    }

    // flag layer
    if let Some(s) = args.soliton {
        soliton = match s {
            SolitonArg::Peregrine => SolitonKind::Peregrine,
            SolitonArg::Ap => SolitonKind::AkhmedievPeregrine,
        };
    }
    if let Some(v) = args.n {
        n = v;
    }
    if let Some(v) = args.xmin {
        x_min = v;
    }
    if let Some(v) = args.xmax {
        x_max = v;
    }
    if !args.times.is_empty() {
        times = args.times.clone();
    }
    if let Some(v) = args.m {
        m = v;
    }
    if let Some(v) = args.seed {
        seed = Some(v);
    }
    if let Some(v) = args.tol {
        tol = v;
    }
    if let Some(v) = args.max_iters {
        max_iters = Some(v);
    }
    if let Some(v) = args.threshold {
        threshold = v;
    }
    if args.resample_per_step {
        resample = true;
    }
    if let Some(s) = args.sensing {
        sensing = match s {
            SensingArg::Point => Sensing::Point,
            SensingArg::Projection => Sensing::Projection,
        };
    }
    if let Some(v) = &args.out {
        out = v.clone();
    }

    // environment fallback for the seed
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("ROGUEWAVE_SEED") {
            Ok(v) => v
                .parse()
                .context("ROGUEWAVE_SEED must be an unsigned integer")?,
            Err(_) => 0,
        },
    };

    if times.is_empty() {
        times = vec![0.0];
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        bail!("threshold must lie strictly between 0 and 1");
    }
    for t in &times {
        if !t.is_finite() {
            bail!("time values must be finite");
        }
    }

    Ok(ExperimentConfig {
        soliton,
        n,
        x_min,
        x_max,
        times,
        m,
        seed,
        tol,
        max_iters,
        threshold,
        resample_per_step: resample,
        sensing,
        out,
    })
}
