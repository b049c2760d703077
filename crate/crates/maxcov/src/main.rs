use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maxcov::output::write_rows;
use maxcov::{CliError, Options, Outcome, Scenario};

#[derive(Parser, Debug)]
#[command(name = "maxcov", version, about = "Frame-wise Maxwell constraints and their covariantization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Constraint residuals d⊥F⊥ and d⊥G⊥ − J⊥ in each frame
    Check(Common),
    /// Covariant residuals dF and dG − J reconstructed from four frames
    Covariantize(Common),
    /// Field invariants and flux checks
    Report(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Scenario file (JSON)
    scenario: PathBuf,
    /// Frame label 0..=3, or "all"
    #[arg(long, default_value = "all")]
    frame: String,
    /// Number of sample points (overrides the scenario)
    #[arg(long)]
    points: Option<usize>,
    /// Sampling seed (overrides the scenario)
    #[arg(long)]
    seed: Option<u64>,
    /// Also emit directly evaluated dF and dG − J
    #[arg(long)]
    oracle: bool,
    /// Output path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Residual tolerance (default 0 for polynomial, 1e-9 for jet)
    #[arg(long)]
    tol: Option<f64>,
}

impl Common {
    fn options(&self) -> Result<Options, CliError> {
        let frame = match self.frame.as_str() {
            "all" => None,
            s => Some(s.parse::<usize>().map_err(|_| CliError::Config {
                path: "--frame".into(),
                message: format!("expected 0..=3 or all, got \"{s}\""),
            })?),
        };
        Ok(Options {
            frame,
            points: self.points,
            seed: self.seed,
            oracle: self.oracle,
            tol: self.tol,
        })
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (common, cmd): (&Common, fn(Scenario, &Options) -> maxcov::Result<Outcome>) = match &cli.command {
        Command::Check(c) => (c, maxcov::check),
        Command::Covariantize(c) => (c, maxcov::covariantize_cmd),
        Command::Report(c) => (c, maxcov::report),
    };
    let opts = common.options()?;
    let text = std::fs::read_to_string(&common.scenario).map_err(|e| CliError::Config {
        path: common.scenario.display().to_string(),
        message: e.to_string(),
    })?;
    let scenario = Scenario::parse(&text)?;
    let outcome = cmd(scenario, &opts)?;
    match &common.out {
        Some(path) => write_rows(BufWriter::new(File::create(path)?), &outcome.rows)?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_rows(&mut lock, &outcome.rows)?;
            lock.flush()?;
        }
    }
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
