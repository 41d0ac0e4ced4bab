use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use phasekit::runner::config::{Integrator, ScenarioConfig};
use phasekit::runner::figures::{write_figure, Figure, Overrides};
use phasekit::runner::verify::verify;
use phasekit::runner::{simulate, write_csv};
use phasekit::{Error, Result};

/// Phase-difference dynamics of bosons and fermions in a double well.
#[derive(Parser)]
#[command(name = "phasekit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario config and write its CSV (to `out`, or stdout).
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Write the subplot CSVs of a figure preset.
    Figure {
        /// fig1 .. fig11
        preset: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run the invariant suite; exits 2 if any check fails.
    Verify {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Limit for the operator-algebra residuals.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    tau_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// eigen or rk4
    #[arg(long)]
    integrator: Option<String>,
}

impl GridArgs {
    fn overrides(&self) -> Result<Overrides> {
        let integrator = self
            .integrator
            .as_deref()
            .map(str::parse::<Integrator>)
            .transpose()?;
        Ok(Overrides {
            tau_max: self.tau_max,
            steps: self.steps,
            integrator,
        })
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config, grid } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
            let mut cfg = ScenarioConfig::parse(&text)?;
            let ov = grid.overrides()?;
            cfg.tau_max = ov.tau_max.unwrap_or(cfg.tau_max);
            cfg.steps = ov.steps.unwrap_or(cfg.steps);
            cfg.integrator = ov.integrator.unwrap_or(cfg.integrator);
            cfg.validate()?;
            let series = simulate(&cfg)?;
            match &cfg.out {
                Some(path) => {
                    // Relative output paths resolve against the config file.
                    let path = config.parent().map_or(path.clone(), |dir| dir.join(path));
                    write_csv(&series, std::fs::File::create(path)?)?;
                }
                None => write_csv(&series, std::io::stdout().lock())?,
            }
            Ok(true)
        }
        Command::Figure { preset, out, grid } => {
            let fig: Figure = preset.parse()?;
            for path in write_figure(fig, &out, &grid.overrides()?)? {
                println!("{}", path.display());
            }
            Ok(true)
        }
        Command::Verify { n_max, tol } => {
            let report = verify(n_max, tol)?;
            println!("{report}");
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
