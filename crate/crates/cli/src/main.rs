use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use momentcoords_cli::check::{run_check, CheckOptions};
use momentcoords_cli::error::{CliError, CliResult};
use momentcoords_cli::gradient::fd_gradient;
use momentcoords_cli::grid::{run_grid, GridOptions};
use momentcoords_cli::method::{evaluate, Method};
use momentcoords_cli::output::EvalRecord;
use momentcoords_cli::spec::{load_geometry, parse_point};

#[derive(Parser)]
#[command(
    name = "momentcoords",
    version,
    about = "Moment coordinates on intervals, quadrilaterals and hexahedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coordinates at one point, printed as JSON.
    Eval {
        /// JSON geometry file or builtin name (biunit-square, conv-quad, nonconv-quad, conv-hex, biunit-cube).
        #[arg(long)]
        geometry: String,
        /// Comma-separated coordinates, e.g. `0.5,1`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "moment")]
        method: Method,
        /// Also emit finite-difference gradients.
        #[arg(long)]
        derivatives: bool,
    },
    /// Coordinates on an N^dim grid over the bounding box, written as CSV.
    Grid {
        #[arg(long)]
        geometry: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        resolution: u32,
        #[arg(long, value_enum, default_value = "moment")]
        method: Method,
        #[arg(long)]
        derivatives: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded property suite; exits 0 only if every property passes.
    Check {
        #[arg(long)]
        geometry: String,
        #[arg(long, value_enum, default_value = "moment")]
        method: Method,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replaces every property bound.
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Eval {
            geometry,
            point,
            method,
            derivatives,
        } => {
            let g = load_geometry(&geometry)?;
            method.ensure_supports(&g)?;
            let p = parse_point(&point, g.dim())?;
            let eval = evaluate(&g, method, &p)?;
            let grad = if derivatives {
                Some(fd_gradient(&g, method, &p).ok_or_else(|| {
                    CliError::Domain("no finite-difference stencil fits inside the domain".into())
                })?)
            } else {
                None
            };
            println!(
                "{}",
                EvalRecord::new(&g, method, &p, &eval, grad.as_deref()).to_json()
            );
            Ok(())
        }
        Command::Grid {
            geometry,
            resolution,
            method,
            derivatives,
            out,
        } => {
            let g = load_geometry(&geometry)?;
            method.ensure_supports(&g)?;
            let result = run_grid(
                &g,
                &GridOptions {
                    resolution: resolution as usize,
                    method,
                    derivatives,
                },
            );
            std::fs::write(&out, &result.csv)?;
            if result.failures > 0 {
                eprintln!("warning: {} points could not be evaluated", result.failures);
            }
            if result.invariant_violations > 0 {
                return Err(CliError::Property(format!(
                    "{} rows broke the coordinate invariants and were left blank",
                    result.invariant_violations
                )));
            }
            Ok(())
        }
        Command::Check {
            geometry,
            method,
            samples,
            seed,
            tol,
        } => {
            let g = load_geometry(&geometry)?;
            let report = run_check(
                &g,
                &CheckOptions {
                    method,
                    samples,
                    seed,
                    tol,
                },
            )?;
            print!("{}", report.render());
            if report.all_passed() {
                Ok(())
            } else {
                Err(CliError::Property("property check failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
