//! `ncm`: nonclassical-correlation measures from the command line.
//!
//! Exit codes: 0 on success, 2 for bad input (including argument errors),
//! 3 when the partition measure refuses a dimension, 1 otherwise.

mod report;
mod state_file;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use nonclassical::bench::{bench_measure_m, doubling_schedule, loglog_slope};
use nonclassical::measures::{full_report, measure_g};
use nonclassical::states::{self, StateSpec};
use nonclassical::sweep::{sweep, Family};
use nonclassical::{classify, DensityMatrix, Tolerances};

use report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "ncm",
    version,
    about = "Measures of nonclassical correlation for bipartite density matrices"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Eigenvalue clustering gap.
    #[arg(long, global = true, value_name = "V")]
    eps_deg: Option<f64>,
    /// Half-point tie window of the nearest-multiple rounding.
    #[arg(long, global = true, value_name = "V")]
    eps_tie: Option<f64>,
    /// Seed for random states and benchmarks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a catalog state to a state file.
    State {
        #[arg(long)]
        name: String,
        /// Parameter as key=value; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Output path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute M, G or both for a state file.
    Compute {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::M)]
        which: Which,
    },
    /// Decide whether a product eigenbasis exists.
    Detect { input: PathBuf },
    /// Sample M and the entanglement entropy along a one-parameter family.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Start of the range (default 0 for phi_p, -1 for kappa).
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        /// End of the range (default 1).
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 201)]
        steps: usize,
        /// Fixed c_y for kappa.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        cy: f64,
        /// Fixed c_z for kappa.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        cz: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time M on random full-rank N x N states for N = 2, 4, 8, ...
    Bench {
        #[arg(long, default_value_t = 16)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "M")]
    M,
    #[value(name = "G")]
    G,
    #[value(name = "all")]
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "phi_p")]
    PhiP,
    #[value(name = "kappa")]
    Kappa,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Capability(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Capability(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<nonclassical::Error> for CliError {
    fn from(e: nonclassical::Error) -> Self {
        use nonclassical::Error as E;
        match e {
            E::Capability(_) => CliError::Capability(e.to_string()),
            E::Numeric(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VALUE, got `{s}`"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn tolerances(g: &Global) -> Tolerances {
    let mut t = Tolerances::default();
    if let Some(v) = g.eps_deg {
        t.deg = v;
    }
    if let Some(v) = g.eps_tie {
        t.tie = v;
    }
    t
}

fn read_state(path: &Path, tol: &Tolerances) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    state_file::parse(&text, tol).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(r: &Report, json: bool) {
    if json {
        print!("{}", r.to_json());
    } else {
        print!("{}", r.to_text());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tol = tolerances(&cli.global);
    let json = cli.global.json;
    match cli.command {
        Command::State { name, params, out } => {
            let mut spec = StateSpec::named(&name).seed(cli.global.seed);
            for (k, v) in params {
                spec = spec.param(&k, v);
            }
            let rho = states::build(&spec)?;
            emit(out.as_deref(), &state_file::render(&rho))
        }
        Command::Compute { input, which } => {
            let rho = read_state(&input, &tol)?;
            let dims = rho.dims();
            let mut r = Report::new([dims.d_a, dims.d_b], tol);
            let mut m = full_report(&rho, false, &tol)?;
            if which != Which::M {
                m.partition = Some(measure_g(&rho, &tol)?);
            }
            if which == Which::G {
                m.per_component.clear();
            }
            r.measure = Some(m);
            print_report(&r, json);
            Ok(())
        }
        Command::Detect { input } => {
            let rho = read_state(&input, &tol)?;
            let dims = rho.dims();
            let mut r = Report::new([dims.d_a, dims.d_b], tol);
            r.detection = Some(classify(&rho, &tol)?);
            print_report(&r, json);
            Ok(())
        }
        Command::Sweep {
            family,
            from,
            to,
            steps,
            cy,
            cz,
            out,
        } => {
            let (fam, lo) = match family {
                FamilyArg::PhiP => (Family::PhiP, 0.0),
                FamilyArg::Kappa => (Family::Kappa { cy, cz }, -1.0),
            };
            let rows = sweep(fam, from.unwrap_or(lo), to.unwrap_or(1.0), steps, &tol)?;
            let mut csv = String::from("param,M,S_vN\n");
            for row in &rows {
                writeln!(csv, "{:.16e},{:.16e},{:.16e}", row.param, row.m, row.s_vn).unwrap();
            }
            emit(out.as_deref(), &csv)
        }
        Command::Bench {
            max_dim,
            trials,
            out,
        } => {
            let rows = bench_measure_m(&doubling_schedule(max_dim), trials, cli.global.seed, &tol)?;
            let mut csv = String::from("N,trials,min_seconds,mean_seconds\n");
            for r in &rows {
                writeln!(
                    csv,
                    "{},{},{:.16e},{:.16e}",
                    r.n, r.trials, r.min_seconds, r.mean_seconds
                )
                .unwrap();
            }
            emit(out.as_deref(), &csv)?;
            if let Some(slope) = loglog_slope(&rows) {
                eprintln!("log-log slope of runtime in N: {slope:.3}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
