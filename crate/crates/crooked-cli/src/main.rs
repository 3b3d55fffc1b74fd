use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use crooked_cli::commands::{self, disjoint::Method, repro::ReproName, CliError, CmdOutput};

/// Crooked planes in Minkowski 2+1 spacetime: disjointness criteria,
/// foliation verification, and mesh export.
///
/// Exit codes: 0 success/agreement/pass, 1 I/O failure, 2 invalid scene or
/// arguments, 3 disjointness methods disagree, 4 verification failure,
/// 5 calibration input not disjoint, 6 axis-aligned calibration input.
#[derive(Parser)]
#[command(name = "crooked", version, about, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Causal, pair, linear, and region classes of a scene's named objects.
    Classify {
        /// Scene file (TOML).
        scene: PathBuf,
    },
    /// Decide whether two named crooked planes are disjoint.
    Disjoint {
        /// Scene file (TOML).
        scene: PathBuf,
        /// First plane name.
        first: String,
        /// Second plane name.
        second: String,
        /// Which criterion to run; `all` compares them and exits 3 on disagreement.
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Mesh half-extent for the sampling oracle.
        #[arg(long, default_value_t = 10.0)]
        extent: f64,
        /// Mesh subdivisions per piece for the sampling oracle.
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        /// Separation below which oracle triangle contacts count as intersections.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Verify a named foliation spec leaf by leaf and pair by pair.
    Verify {
        /// Scene file (TOML).
        scene: PathBuf,
        /// Foliation spec name.
        spec: String,
        /// Override the sampling interval, e.g. `--interval -2,2`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        interval: Option<(f64, f64)>,
        /// Override the number of samples.
        #[arg(long)]
        samples: Option<usize>,
        /// Override the tangency tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Verify a foliation spec and export its leaves as OBJ meshes.
    Foliate {
        /// Scene file (TOML).
        scene: PathBuf,
        /// Foliation spec name.
        spec: String,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Number of leaves to export, evenly spaced over the spec interval.
        #[arg(long, default_value_t = 7)]
        count: usize,
        /// Mesh half-extent.
        #[arg(long, default_value_t = 10.0)]
        extent: f64,
        /// Mesh subdivisions per piece.
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        /// Export even if verification fails.
        #[arg(long)]
        force: bool,
    },
    /// Fit a hyperbolic flow whose leaves interpolate two disjoint crooked planes.
    Calibrate {
        /// Vertex of the first plane, e.g. `--p0 0,0,0`.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        p0: [f64; 3],
        /// Director of the first plane.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        u0: [f64; 3],
        /// Vertex of the second plane.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        p1: [f64; 3],
        /// Director of the second plane.
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        u1: [f64; 3],
    },
    /// Recompute a bundled reference result and print the comparison.
    Repro {
        #[arg(value_enum)]
        name: ReproName,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `a,b`, got `{s}`"));
    }
    let a = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected `x,y,z`, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.trim().parse::<f64>().map_err(|e| e.to_string())?;
    }
    Ok(out)
}

fn dispatch(command: Command) -> Result<CmdOutput, CliError> {
    match command {
        Command::Classify { scene } => commands::classify::run(&scene),
        Command::Disjoint {
            scene,
            first,
            second,
            method,
            extent,
            resolution,
            eps,
        } => commands::disjoint::run(&scene, &first, &second, method, extent, resolution, eps),
        Command::Verify {
            scene,
            spec,
            interval,
            samples,
            tol,
        } => commands::verify::run(&scene, &spec, interval, samples, tol),
        Command::Foliate {
            scene,
            spec,
            out,
            count,
            extent,
            resolution,
            force,
        } => commands::foliate::run(&scene, &spec, &out, count, extent, resolution, force),
        Command::Calibrate { p0, u0, p1, u1 } => commands::calibrate::run(p0, u0, p1, u1),
        Command::Repro { name } => commands::repro::run(name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
