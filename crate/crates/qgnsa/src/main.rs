use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qgnsa::cli::{self, ReportFormat};

#[derive(Parser)]
#[command(name = "qgnsa", version, about = "Detector generation and evaluation for negative-selection anomaly detection")]
struct Cli {
    /// Worker threads for parallel runs (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Preprocess a raw CSV into the self/nonself dataset layout
    Preprocess {
        /// Input CSV with a header row
        #[arg(long)]
        input: PathBuf,
        /// Preset name (e.g. `metaverse`) or path to a TOML spec file
        #[arg(long)]
        spec: String,
        /// Output directory for self.csv, nonself.csv and manifest.json
        #[arg(long)]
        output: PathBuf,
    },
    /// Generate a synthetic dataset
    Synth {
        #[arg(long, default_value_t = 12)]
        features: usize,
        #[arg(long = "self", default_value_t = 2000)]
        n_self: usize,
        #[arg(long = "nonself", default_value_t = 500)]
        n_nonself: usize,
        #[arg(long, default_value_t = 1.0)]
        separation: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Execute the configured evaluation protocol and write reports
    Run {
        /// TOML run configuration
        #[arg(long)]
        config: PathBuf,
    },
    /// Render an aggregate report to stdout
    Report {
        /// report.json produced by `run`
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: failed to configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }

    let result = match cli.command {
        Command::Preprocess { input, spec, output } => cli::cmd_preprocess(&input, &spec, &output),
        Command::Synth {
            features,
            n_self,
            n_nonself,
            separation,
            seed,
            output,
        } => cli::cmd_synth(features, n_self, n_nonself, separation, seed, &output),
        Command::Run { config } => cli::cmd_run(&config),
        Command::Report { input, format } => {
            let format = match format {
                Format::Table => ReportFormat::Table,
                Format::Csv => ReportFormat::Csv,
            };
            cli::cmd_report(&input, format)
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
