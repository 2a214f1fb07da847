//! `isoclinic`: solve, check and export minimal spacelike surfaces.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use isoclinic::config::{Format, GridSize, ProblemConfig};
use isoclinic::export::Projection;
use isoclinic::report::{evaluate, Overrides};
use isoclinic::{gallery, Error};

#[derive(Parser)]
#[command(name = "isoclinic", version, about = "Minimal spacelike surfaces in R^4_2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Obj,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProjectionArg {
    DropX1,
    DropX2,
    DropX3,
    DropX4,
}

#[derive(clap::Args)]
struct ExportArgs {
    /// Output files to write
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// 4D to 3D projection for OBJ vertices
    #[arg(long, value_enum)]
    projection: Option<ProjectionArg>,
    /// Sampling grid, NUxNV
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSize>,
    /// Quadrature target tolerance
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a config and write CSV/OBJ and a JSON report
    Solve {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        export: ExportArgs,
    },
    /// Solve a config and print the invariant table only
    Check {
        config: PathBuf,
        #[command(flatten)]
        export: ExportArgs,
    },
    /// Run a built-in example (`list` prints the names)
    Gallery {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        export: ExportArgs,
    },
}

fn parse_grid(s: &str) -> Result<GridSize, String> {
    s.parse()
}

impl ExportArgs {
    fn overrides(&self, out: Option<PathBuf>) -> Overrides {
        Overrides {
            grid: self.grid,
            tol: self.tol,
            format: self.format.map(|f| match f {
                FormatArg::Csv => Format::Csv,
                FormatArg::Obj => Format::Obj,
                FormatArg::Both => Format::Both,
            }),
            projection: self.projection.map(|p| match p {
                ProjectionArg::DropX1 => Projection::DropX1,
                ProjectionArg::DropX2 => Projection::DropX2,
                ProjectionArg::DropX3 => Projection::DropX3,
                ProjectionArg::DropX4 => Projection::DropX4,
            }),
            out_dir: out,
        }
    }
}

fn configure_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("ISOCLINIC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::config(format!("ISOCLINIC_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::config(e.to_string()))
}

fn solve_and_write(mut cfg: ProblemConfig, ov: &Overrides, write: bool) -> Result<(), Error> {
    ov.apply(&mut cfg)?;
    let outcome = evaluate(&cfg)?;
    print!("{}", outcome.report.table());
    if write {
        let dir = cfg.output.dir.clone().unwrap_or_else(|| ".".into());
        for p in outcome.write_artifacts(&cfg, Path::new(&dir))? {
            println!("wrote {}", p.display());
        }
    }
    outcome.verdict()
}

/// Load a config, naming it after the file when it has no `name`.
fn load(path: &Path) -> Result<ProblemConfig, Error> {
    let mut cfg = ProblemConfig::load(path)?;
    if cfg.name.is_none() {
        cfg.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Error> {
    configure_threads()?;
    match cli.command {
        Command::Solve { config, out, export } => {
            solve_and_write(load(&config)?, &export.overrides(out), true)
        }
        Command::Check { config, export } => solve_and_write(load(&config)?, &export.overrides(None), false),
        Command::Gallery { name, out, export } => {
            if name == "list" {
                for n in gallery::names() {
                    println!("{n}");
                }
                return Ok(());
            }
            solve_and_write(gallery::config(&name)?, &export.overrides(out), true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprint!("error[UsageError]: {}", text.strip_prefix("error: ").unwrap_or(&text));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
