use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use alloystef::cli::{self, CliError, Command, SweepParam, EXIT_CONFIG};

#[derive(Debug, Parser)]
#[command(
    name = "alloystef",
    version,
    about = "Similarity solutions of binary-alloy solidification"
)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Param {
    Q0,
    H0,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print the admissibility bounds of the boundary data.
    Check(Common),
    /// Solve and print a JSON summary.
    Solve(Common),
    /// Solve and write temperature/concentration profiles as CSV.
    Profile {
        #[command(flatten)]
        common: Common,
        /// Sample times, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        times: Vec<f64>,
        /// Right end of the x grid.
        #[arg(long, default_value_t = 1.0)]
        xmax: f64,
        /// Grid points per time (the front is added on top).
        #[arg(long, default_value_t = 101)]
        nx: usize,
    },
    /// Solve and check every condition of the free-boundary problem.
    Verify(Common),
    /// Compare with the fixed-face problem driven by the solved face temperature.
    Equivalence(Common),
    /// Vary q0 or h0 over a linear range and write one CSV row per value.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 31)]
        steps: usize,
    },
}

fn run(args: Args) -> Result<u8, CliError> {
    let (common, command) = match args.command {
        Cmd::Check(c) => (c, Command::Check),
        Cmd::Solve(c) => (c, Command::Solve),
        Cmd::Verify(c) => (c, Command::Verify),
        Cmd::Equivalence(c) => (c, Command::Equivalence),
        Cmd::Profile {
            common,
            times,
            xmax,
            nx,
        } => (
            common,
            Command::Profile {
                times,
                x_max: xmax,
                n_x: nx,
            },
        ),
        Cmd::Sweep {
            common,
            param,
            from,
            to,
            steps,
        } => (
            common,
            Command::Sweep {
                param: match param {
                    Param::Q0 => SweepParam::Q0,
                    Param::H0 => SweepParam::H0,
                },
                from,
                to,
                steps,
            },
        ),
    };
    let cfg = cli::load_config(&common.config)?;
    log::info!("{} on {}", command.name(), common.config.display());
    let outcome = cli::run_command(&cfg, &command)?;
    match &common.out {
        Some(path) => std::fs::write(path, &outcome.output)
            .map_err(|e| CliError::new(EXIT_CONFIG, format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&outcome.output)
            .map_err(|e| CliError::new(EXIT_CONFIG, format!("stdout: {e}")))?,
    }
    Ok(outcome.code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ALLOYSTEF_LOG", "warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    match run(args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
