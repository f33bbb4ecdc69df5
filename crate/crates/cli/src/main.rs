//! `eqlab`: find, count, and classify the equilibria of planar point-mass
//! potentials with a quadratic confining term.

mod contour;
mod output;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use eqlab_core::config::Configuration;
use eqlab_core::families::{lagrange_config, triangle_config};
use eqlab_core::polysys::{
    build_system_ab, build_system_w, newton_supports, parse_rational_str,
    rational_points_from_json,
};
use eqlab_core::ring::{count_ring_equilibria, mass_sweep, RingConfig};
use eqlab_core::solver::{find_equilibria, morse_report, SolveOptions};
use num::ToPrimitive;

use contour::ContourGrid;

#[derive(Parser)]
#[command(
    name = "eqlab",
    version,
    about = "Equilibria of planar point-mass potentials with a quadratic confining term"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a configuration file and report Morse-classified equilibria.
    Solve {
        /// Configuration JSON: {"masses": [{"x":..,"y":..,"m":..}, ..]}
        #[arg(long)]
        config: PathBuf,
        /// Write the result JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the seed-grid spacing.
        #[arg(long)]
        spacing: Option<f64>,
        /// Override the Newton convergence tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Solve a named family: ring, Lagrange two-body, or equilateral triangle.
    #[command(group(
        ArgGroup::new("family").required(true).args(["ring", "lagrange", "triangle"])
    ))]
    Ring {
        /// Ring: total mass count N (central + N-1 peripheral), peripheral
        /// mass M, central mass C. Masses accept p/q rationals.
        #[arg(long, num_args = 3, value_names = ["N", "M", "C"])]
        ring: Option<Vec<String>>,
        /// Two-body Lagrange configuration with masses M1, M2.
        #[arg(long, num_args = 2, value_names = ["M1", "M2"])]
        lagrange: Option<Vec<String>>,
        /// Equal-mass equilateral triangle with mass M.
        #[arg(long, value_name = "M")]
        triangle: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        spacing: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sweep the peripheral/central mass ratio of a ring; CSV output.
    Sweep {
        /// Total mass count N of the ring (at least 4).
        #[arg(long, value_name = "N")]
        ring: usize,
        /// Log-spaced ratio range: MIN MAX STEPS (endpoints inclusive).
        #[arg(long, num_args = 3, value_names = ["MIN", "MAX", "STEPS"])]
        sweep: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        spacing: Option<f64>,
    },
    /// Clamped potential values on a rectangle; CSV output.
    Contour {
        #[arg(long)]
        config: PathBuf,
        /// XMIN XMAX YMIN YMAX RES
        #[arg(long, num_args = 5, allow_hyphen_values = true,
              value_names = ["XMIN", "XMAX", "YMIN", "YMAX", "RES"])]
        contour: Vec<String>,
        /// Clamp value near singularities.
        #[arg(long, default_value_t = contour::DEFAULT_CAP)]
        cap: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a polynomial reformulation of the equilibrium system.
    Polysys {
        #[arg(long)]
        config: PathBuf,
        /// Which reformulation: the (x, y, w) system or the difference system.
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve, then check counting identities, root bounds, and lift residuals.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        spacing: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    W,
    Ab,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pretty,
    Supports,
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors; everything else is a usage fault
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// EQLAB_THREADS caps the rayon pool; 0 or unset means automatic.
fn init_thread_pool() {
    if let Ok(text) = std::env::var("EQLAB_THREADS") {
        match text.trim().parse::<usize>() {
            Ok(0) => {}
            Ok(k) => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            Err(_) => eprintln!("warning: ignoring invalid EQLAB_THREADS={text:?}"),
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve {
            config,
            out,
            spacing,
            tol,
        } => cmd_solve(&config, out.as_deref(), solve_options(spacing, tol)),
        Command::Ring {
            ring,
            lagrange,
            triangle,
            out,
            spacing,
            tol,
        } => cmd_ring(
            ring.as_deref(),
            lagrange.as_deref(),
            triangle.as_deref(),
            out.as_deref(),
            solve_options(spacing, tol),
        ),
        Command::Sweep {
            ring,
            sweep,
            out,
            spacing,
        } => cmd_sweep(ring, &sweep, out.as_deref(), solve_options(spacing, None)),
        Command::Contour {
            config,
            contour,
            cap,
            out,
        } => cmd_contour(&config, &contour, cap, out.as_deref()),
        Command::Polysys {
            config,
            variant,
            format,
            out,
        } => cmd_polysys(&config, variant, format, out.as_deref()),
        Command::Verify {
            config,
            spacing,
            tol,
        } => cmd_verify(&config, solve_options(spacing, tol)),
    }
}

fn solve_options(spacing: Option<f64>, tol: Option<f64>) -> SolveOptions {
    SolveOptions {
        grid_spacing: spacing,
        newton_tolerance: tol,
        ..SolveOptions::default()
    }
}

fn read_config_file(path: &Path) -> Result<(String, Configuration)> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let config = Configuration::from_json_str(&text)?;
    Ok((text, config))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn parse_positive(text: &str, what: &str) -> Result<f64> {
    let value = parse_rational_str(text)
        .map_err(|e| anyhow::anyhow!("{what}: {e}"))?
        .to_f64()
        .with_context(|| format!("{what}: not representable as a double"))?;
    if !(value > 0.0) || !value.is_finite() {
        bail!("{what} must be positive, got {text}");
    }
    Ok(value)
}

fn cmd_solve(config_path: &Path, out: Option<&Path>, opts: SolveOptions) -> Result<u8> {
    let (_, config) = read_config_file(config_path)?;
    let equilibria = find_equilibria(&config, &opts)?;
    let report = morse_report(&equilibria, config.n());
    let value = output::result_json(config.n(), &equilibria, &report);
    emit(out, &serde_json::to_string_pretty(&value)?)?;
    Ok(if report.degenerate_found { 2 } else { 0 })
}

fn cmd_ring(
    ring: Option<&[String]>,
    lagrange: Option<&[String]>,
    triangle: Option<&str>,
    out: Option<&Path>,
    opts: SolveOptions,
) -> Result<u8> {
    if let Some(args) = ring {
        let n_total: usize = args[0]
            .parse()
            .with_context(|| format!("ring N: invalid integer {:?}", args[0]))?;
        let m = parse_positive(&args[1], "ring peripheral mass")?;
        let c = parse_positive(&args[2], "ring central mass")?;
        let ring = RingConfig::new(n_total, m, c, 1.0)?;
        let count = count_ring_equilibria(&ring, &opts)?;
        let report = morse_report(&count.equilibria, n_total);
        let value = output::ring_json(n_total, &count, &report);
        emit(out, &serde_json::to_string_pretty(&value)?)?;
        return Ok(if report.degenerate_found { 2 } else { 0 });
    }
    let config = if let Some(args) = lagrange {
        lagrange_config(
            parse_positive(&args[0], "lagrange m1")?,
            parse_positive(&args[1], "lagrange m2")?,
        )?
    } else {
        let m = triangle.expect("clap group guarantees one family");
        triangle_config(parse_positive(m, "triangle mass")?)?
    };
    let equilibria = find_equilibria(&config, &opts)?;
    let report = morse_report(&equilibria, config.n());
    let value = output::result_json(config.n(), &equilibria, &report);
    emit(out, &serde_json::to_string_pretty(&value)?)?;
    Ok(if report.degenerate_found { 2 } else { 0 })
}

fn cmd_sweep(n_total: usize, sweep: &[String], out: Option<&Path>, opts: SolveOptions) -> Result<u8> {
    let min = parse_positive(&sweep[0], "sweep MIN")?;
    let max = parse_positive(&sweep[1], "sweep MAX")?;
    let steps: usize = sweep[2]
        .parse()
        .with_context(|| format!("sweep STEPS: invalid integer {:?}", sweep[2]))?;
    if steps == 0 || (steps == 1 && min != max) || min > max {
        bail!("sweep range needs MIN <= MAX and STEPS >= 2 (or STEPS = 1 with MIN = MAX)");
    }
    let ratios: Vec<f64> = if steps == 1 {
        vec![min]
    } else {
        (0..steps)
            .map(|i| min * (max / min).powf(i as f64 / (steps - 1) as f64))
            .collect()
    };
    let result = mass_sweep(n_total, &ratios, &opts)?;
    emit(out, result.to_csv().trim_end())?;
    Ok(0)
}

fn cmd_contour(config_path: &Path, args: &[String], cap: f64, out: Option<&Path>) -> Result<u8> {
    let (_, config) = read_config_file(config_path)?;
    let bound = |i: usize, what: &str| -> Result<f64> {
        args[i]
            .parse::<f64>()
            .with_context(|| format!("contour {what}: invalid number {:?}", args[i]))
    };
    let resolution: usize = args[4]
        .parse()
        .with_context(|| format!("contour RES: invalid integer {:?}", args[4]))?;
    let grid = ContourGrid::compute(
        &config,
        bound(0, "XMIN")?,
        bound(1, "XMAX")?,
        bound(2, "YMIN")?,
        bound(3, "YMAX")?,
        resolution,
        cap,
    )?;
    emit(out, grid.to_csv().trim_end())?;
    Ok(0)
}

fn cmd_polysys(config_path: &Path, variant: Variant, format: Format, out: Option<&Path>) -> Result<u8> {
    let (text, _) = read_config_file(config_path)?;
    let points = rational_points_from_json(&text)?;
    let system = match variant {
        Variant::W => build_system_w(&points),
        Variant::Ab => build_system_ab(&points),
    };
    let rendered = match format {
        Format::Pretty => system.pretty(),
        Format::Supports => newton_supports(&system).to_text(),
    };
    emit(out, &rendered)?;
    Ok(0)
}

fn cmd_verify(config_path: &Path, opts: SolveOptions) -> Result<u8> {
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let checks = verify::run_checks(&text, &opts)?;
    let mut all_pass = true;
    for check in &checks {
        let status = if check.pass { "PASS" } else { "FAIL" };
        all_pass &= check.pass;
        println!("{status} {}: {}", check.name, check.detail);
    }
    Ok(if all_pass { 0 } else { 2 })
}
