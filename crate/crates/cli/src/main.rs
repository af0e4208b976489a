//! `wulff`: one binary with a subcommand per module, plus `verify`.

mod commands;
mod config;
mod emit;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "wulff", version, about = "Wulff shapes, dual shapes, partitions, skyscrapers and Ising droplets")]
struct Cli {
    /// File of `key = value` lines (or a run manifest) pre-seeding any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory receiving artifacts and the run manifest.
    #[arg(long, global = true, env = "WULFF_OUT_DIR", default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads requested from the modules (all run single-threaded).
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// Wulff shape of a surface tension.
    Wulff(WulffArgs),
    /// Maximizer of the dual problem over monotone graphs.
    Dual(DualArgs),
    /// Facet of a Wulff shape from the tangent derivative of the tension.
    Facet(FacetArgs),
    /// Partition counts and lists.
    Partitions(PartitionsArgs),
    /// Plane and spatial partitions over boxes and skew shapes.
    Skyscraper(SkyscraperArgs),
    /// Grand-canonical samples of Young diagrams or plane partitions.
    Sample(SampleArgs),
    /// Glauber dynamics of the finite Ising model.
    Ising(IsingArgs),
    /// Runs the acceptance suite and prints a pass/fail table.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct WulffArgs {
    /// Built-in name (isotropic, l1, cos4) or a CSV table of angle,value rows.
    #[arg(long, default_value = "isotropic")]
    pub tau: String,
    /// 2 for planar shapes, 3 for solids.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Number of normals in the plane, icosphere level in space.
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Rescale to this enclosed volume.
    #[arg(long)]
    pub volume: Option<f64>,
    /// Output files: *.csv, *.svg.
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct DualArgs {
    /// Built-in name (staircase-entropy, product, zero) or a CSV table over [0, pi/2].
    #[arg(long, default_value = "staircase-entropy")]
    pub eta: String,
    #[arg(long, default_value_t = wulff_core::dual::DEFAULT_DUAL_RESOLUTION)]
    pub resolution: usize,
    /// Emit the boundary of the dual body instead of the unit-volume maximizer.
    #[arg(long)]
    pub raw: bool,
    /// Output files: *.csv, *.svg.
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct FacetArgs {
    /// Tangent derivative of the tension: built-in name or CSV table.
    #[arg(long, default_value = "isotropic")]
    pub tau_prime: String,
    /// Facet normal as `x,y,z`.
    #[arg(long, default_value = "0,0,1")]
    pub normal: String,
    #[arg(long, default_value_t = 360)]
    pub resolution: usize,
    /// Output files: *.csv, *.svg (tangent-plane coordinates).
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct PartitionsArgs {
    #[arg(long, default_value_t = 20)]
    pub degree: usize,
    /// all, strict or bounded (with --max-parts).
    #[arg(long, default_value = "all")]
    pub kind: String,
    /// Largest number of parts for `--kind bounded`
    #[arg(long)]
    pub max_parts: Option<usize>,
    /// Enumerate the partitions of this integer.
    #[arg(long)]
    pub list: Option<usize>,
    /// Lift the size guard on exhaustive enumeration
    #[arg(long)]
    pub override_guard: bool,
    /// Output files: coeffs.csv, partitions.json.
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct SkyscraperArgs {
    /// Box `mxn` (plane partitions) or `mxnxk` (spatial partitions).
    #[arg(long)]
    pub shape: String,
    /// JSON array of row lengths removed from the top-left corner.
    #[arg(long)]
    pub hole: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub series_degree: usize,
    /// Print the pedestal polynomial.
    #[arg(long)]
    pub pedestal_poly: bool,
    /// Lift the size guard on exhaustive enumeration
    #[arg(long)]
    pub override_guard: bool,
    /// Output files: coeffs.csv, polynomial.json.
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    /// young or plane.
    #[arg(long, default_value = "young")]
    pub model: String,
    /// Mean volume the fugacity is tuned to
    #[arg(long)]
    pub n_target: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Output files: profiles.csv, stats.json, overlay.svg.
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct IsingArgs {
    #[arg(long, default_value_t = 32)]
    pub size: usize,
    /// torus or box.
    #[arg(long, default_value = "torus")]
    pub topology: String,
    /// Boundary condition of a box: +, - or split:nx,ny.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub bc: String,
    #[arg(long, default_value_t = 0.7)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub field: f64,
    /// metropolis or heatbath.
    #[arg(long, default_value = "metropolis")]
    pub rate: String,
    #[arg(long, default_value_t = 100)]
    pub sweeps: usize,
    /// Initial spins: + or -.
    #[arg(long, default_value = "-", allow_hyphen_values = true)]
    pub initial: String,
    /// Write a snapshot every this many sweeps (0: final state only).
    #[arg(long, default_value_t = 0)]
    pub snapshot_every: usize,
    /// Output files: *.csv (trace), *.pgm (snapshots).
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// all, combinatorics, geometry, sampling or ising.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Run only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub criterion: Vec<u8>,
    /// Output files: *.json, *.csv.
    #[arg(long, value_delimiter = ',')]
    pub emit: Vec<String>,
}

/// Exit status 2 for usage errors, 1 for model and verification failures.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Model(String),
}

impl From<wulff_core::Error> for Failure {
    fn from(e: wulff_core::Error) -> Self {
        Failure::Model(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Model(format!("i/o: {e}"))
    }
}

fn main() -> ExitCode {
    let argv = match config::merge(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut parameters = serde_json::to_value(&cli.command).expect("serializable arguments");
    if let Some(map) = parameters.as_object_mut() {
        map.insert("seed".into(), cli.seed.into());
        map.insert("workers".into(), cli.workers.into());
    }
    let mut out = manifest::Outputs::new(cli.out_dir.clone());
    let (name, result) = match &cli.command {
        Command::Wulff(a) => ("wulff", commands::wulff(a, &mut out)),
        Command::Dual(a) => ("dual", commands::dual(a, &mut out)),
        Command::Facet(a) => ("facet", commands::facet(a, &mut out)),
        Command::Partitions(a) => ("partitions", commands::partitions(a, &mut out)),
        Command::Skyscraper(a) => ("skyscraper", commands::skyscraper(a, &mut out)),
        Command::Sample(a) => ("sample", commands::sample(a, cli.seed, &mut out)),
        Command::Ising(a) => ("ising", commands::ising(a, cli.seed, &mut out)),
        Command::Verify(a) => ("verify", commands::verify(a, &mut out)),
    };
    let finished = result.and_then(|()| Ok(out.finish(name, cli.seed, parameters)?));
    match finished {
        Ok(path) => {
            println!("manifest: {}", path.display());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Model(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
