//! `pblp`: solve, decompose, sweep and check parametric biobjective LPs.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pblp_core::breakpoints::enumerate_breakpoints_with;
use pblp_core::io::{
    emit_check, emit_decomposition, emit_plot_data, emit_solution, emit_sweep, parse_problem,
};
use pblp_core::oracle::{check_instance, sweep_lambda, CheckOptions};
use pblp_core::{build_tolp, decompose, Error, Method, Pblp, Rational};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_COMPUTE: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "pblp",
    version,
    about = "Exact breakpoints of parametric biobjective linear programs"
)]
struct Cli {
    /// Suppress the timing summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Lp,
    Adapted,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Lp => Method::AlgorithmOne,
            MethodArg::Adapted => Method::AdaptedWsd,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Breakpoints, parameter intervals and solution sets.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "lp")]
        method: MethodArg,
        /// Write polygon and segment records here.
        #[arg(long)]
        plot_out: Option<PathBuf>,
        /// Parameter values drawn as segments (default: the breakpoints).
        #[arg(long = "lambda")]
        lambdas: Vec<Rational>,
    },
    /// Extreme images and weight set components.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        plot_out: Option<PathBuf>,
        #[arg(long = "lambda")]
        lambdas: Vec<Rational>,
    },
    /// Fixed-parameter solves on a uniform grid.
    Sweep {
        file: PathBuf,
        #[arg(long, default_value = "10")]
        lambda_max: Rational,
        #[arg(long, default_value = "100")]
        steps: usize,
    },
    /// Compare both methods against each other and the brute-force oracles.
    Check {
        file: PathBuf,
        /// Skip the grid sweep when it would need more steps than this.
        #[arg(long, default_value = "400")]
        steps: usize,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::BadCase(_)
        | Error::DimensionMismatch(_)
        | Error::NotParametric
        | Error::Rational(_)
        | Error::InvalidWeight(_) => EXIT_INPUT,
        Error::NegativeParameter(_) => EXIT_USAGE,
        _ => EXIT_COMPUTE,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<Pblp, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_problem(&text).map_err(|e| Failure {
        code: exit_code(&e),
        message: format!("{}: {e}", path.display()),
    })
}

fn write_plot(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: EXIT_COMPUTE,
        message: format!("{}: {e}", path.display()),
    })
}

fn check_lambdas(lambdas: &[Rational]) -> Result<(), Failure> {
    match lambdas.iter().find(|l| l.is_negative()) {
        Some(l) => Err(Error::NegativeParameter(l.clone()).into()),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let started = Instant::now();
    let (out, ok, summary) = match cli.command {
        Command::Solve {
            file,
            method,
            plot_out,
            lambdas,
        } => {
            check_lambdas(&lambdas)?;
            let p = load(&file)?;
            let dec = decompose(&build_tolp(&p))?;
            let sol = enumerate_breakpoints_with(&p, &dec, method.into())?;
            if let Some(path) = plot_out {
                let lambdas = if lambdas.is_empty() {
                    &sol.breakpoints
                } else {
                    &lambdas
                };
                write_plot(&path, &emit_plot_data(&dec, p.case, lambdas)?)?;
            }
            let summary = format!(
                "{} images, {} breakpoints, {} LPs",
                dec.images.len(),
                sol.breakpoints.len(),
                dec.lp_solves + sol.lp_solves
            );
            (emit_solution(&p, &sol, &dec), true, summary)
        }
        Command::Decompose {
            file,
            plot_out,
            lambdas,
        } => {
            check_lambdas(&lambdas)?;
            let p = load(&file)?;
            let dec = decompose(&build_tolp(&p))?;
            if let Some(path) = plot_out {
                write_plot(&path, &emit_plot_data(&dec, p.case, &lambdas)?)?;
            }
            let summary = format!("{} images, {} LPs", dec.images.len(), dec.lp_solves);
            (emit_decomposition(&p, &dec), true, summary)
        }
        Command::Sweep {
            file,
            lambda_max,
            steps,
        } => {
            if !lambda_max.is_positive() || steps < 2 {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: "--lambda-max must be positive and --steps at least 2".into(),
                });
            }
            let p = load(&file)?;
            let report = sweep_lambda(&p, &lambda_max, steps)?;
            let summary = format!(
                "{} grid points, {} change cells",
                report.grid.len(),
                report.changes.len()
            );
            (emit_sweep(&report), true, summary)
        }
        Command::Check { file, steps } => {
            let p = load(&file)?;
            let report = check_instance(
                &p,
                CheckOptions {
                    max_sweep_steps: steps,
                },
            )?;
            let summary = if report.passed() {
                "all checks passed".to_string()
            } else {
                format!("{} check(s) failed", report.failures.len())
            };
            (emit_check(&report), report.passed(), summary)
        }
    };
    if !cli.quiet {
        eprintln!("{summary} in {:.3} s", started.elapsed().as_secs_f64());
    }
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
