use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ddr_core::scenario::{self, presets, ScenarioConfig};
use ddr_core::{Error, TransverseGrid};

#[derive(Parser)]
#[command(
    name = "ddrsim",
    version,
    about = "Double-dark-resonance susceptibility and probe cloning scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a config file and write outputs.
    Run(RunArgs),
    /// List the built-in presets.
    ListPresets,
    /// Check a config file (or preset) without running it.
    Validate(Source),
    /// Print the fully resolved config of a preset or file as TOML.
    Show(Source),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in scenario name (see list-presets).
    #[arg(long)]
    preset: Option<String>,
    /// Scenario file, TOML or JSON.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Snapshot distances in cm, comma separated.
    #[arg(long, value_delimiter = ',', value_name = "Z1,Z2,..")]
    snapshots: Option<Vec<f64>>,
    /// Force the x-only transverse grid.
    #[arg(long = "1d", conflicts_with = "two_d")]
    one_d: bool,
    /// Force a square 2D transverse grid.
    #[arg(long = "2d")]
    two_d: bool,
    /// Propagation step in cm.
    #[arg(long)]
    dz: Option<f64>,
    /// Grid samples, NX or NXxNY.
    #[arg(long, value_name = "NX[xNY]")]
    grid: Option<String>,
}

fn load(source: &Source) -> Result<(ScenarioConfig, Vec<&'static str>), Error> {
    match (&source.preset, &source.config) {
        (Some(name), _) => {
            let p = presets::preset(name)?;
            Ok((p.config, p.defaulted))
        }
        (None, Some(path)) => Ok((ScenarioConfig::load(path)?, Vec::new())),
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn parse_grid(text: &str) -> Result<(usize, Option<usize>), Error> {
    let bad = || Error::ConfigInvalid {
        path: "--grid".into(),
        message: format!("`{text}` is not NX or NXxNY"),
    };
    let mut parts = text.split('x');
    let nx = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let ny = match parts.next() {
        Some(s) => Some(s.parse().map_err(|_| bad())?),
        None => None,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((nx, ny))
}

fn apply_overrides(cfg: &mut ScenarioConfig, args: &RunArgs) -> Result<(), Error> {
    if let Some(z) = &args.snapshots {
        cfg.outputs.snapshots = z.clone();
    }
    if let Some(dz) = args.dz {
        cfg.propagation.dz = dz;
    }
    let g = cfg.grid;
    if args.one_d {
        cfg.grid = TransverseGrid::new_1d(g.nx, g.extent_x);
    }
    if args.two_d && g.is_1d() {
        cfg.grid = TransverseGrid::new_2d(g.nx, g.nx, g.extent_x, g.extent_x);
    }
    if let Some(spec) = &args.grid {
        let (nx, ny) = parse_grid(spec)?;
        cfg.grid.nx = nx;
        match ny {
            Some(ny) => cfg.grid.ny = ny,
            None if !cfg.grid.is_1d() => cfg.grid.ny = nx,
            None => {}
        }
    }
    cfg.validate()
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::ListPresets => {
            for p in presets::all_presets() {
                println!("{:<22} {}", p.name, p.summary);
            }
        }
        Command::Validate(source) => {
            let (cfg, _) = load(&source)?;
            cfg.validate()?;
            println!("{}: ok ({} case(s))", cfg.name, cfg.cases().len());
        }
        Command::Show(source) => {
            let (cfg, defaulted) = load(&source)?;
            for key in defaulted {
                println!("# defaulted: {key}");
            }
            print!("{}", cfg.to_toml_string());
        }
        Command::Run(args) => {
            let (mut cfg, defaulted) = load(&args.source)?;
            apply_overrides(&mut cfg, &args)?;
            let summary = scenario::run_scenario(&cfg, &defaulted, Some(&args.out))?;
            println!(
                "{}: {} case(s) in {:.1} s, {} file(s) in {}",
                summary.scenario,
                summary.cases.len(),
                summary.wall_clock_seconds,
                summary.files.len(),
                args.out.display()
            );
            for case in &summary.cases {
                if let Some(last) = case.snapshots.last() {
                    let finesse = last.probe.as_ref().and_then(|m| m.finesse);
                    let cmin = last.probe.as_ref().and_then(|m| m.central_min_ratio);
                    println!(
                        "  {:<6} z = {} cm  T = {:.4e}  finesse = {}  central min = {}",
                        case.name,
                        last.z,
                        last.transmission,
                        finesse.map_or("-".into(), |f| format!("{f:.3}")),
                        cmin.map_or("-".into(), |c| format!("{c:.3}")),
                    );
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(match e {
                Error::ConfigInvalid { .. } | Error::InvalidParameter { .. } => 2,
                Error::Io { .. } => 3,
                _ => 1,
            })
        }
    }
}
