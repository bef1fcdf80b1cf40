use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use topocount_cli::{config::ExperimentConfig, plot_barcode, run_experiment, sweep, CliError};

/// Estimates how many monocomponent sources make up an array observation by
/// reading Betti numbers off its phase portrait, with MDL/AIC baselines.
#[derive(Parser)]
#[command(name = "topocount", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a TOML config and write report + barcode
    Run {
        config: PathBuf,
    },
    /// Repeat an experiment across values of one numeric config field
    Sweep {
        config: PathBuf,
        /// Config field to vary (e.g. snr_db, landmarks, max_filtration)
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values; empty for a dry header-only table
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        /// Seeded repetitions per value
        #[arg(long, default_value_t = 10)]
        reps: usize,
    },
    /// Render a barcode CSV to SVG
    Plot {
        barcode: PathBuf,
        /// Output path; defaults to the input with extension .svg
        #[arg(long)]
        out: Option<PathBuf>,
        /// Persistence cutoff marker as a fraction of max filtration
        #[arg(long, default_value_t = 0.5)]
        fraction: f64,
    },
}

/// Output directory override; takes precedence over the config file.
const OUTPUT_DIR_ENV: &str = "TOPOCOUNT_OUTPUT_DIR";

fn output_override() -> Option<PathBuf> {
    std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from)
}

fn real_main() -> Result<(), CliError> {
    match Cli::parse().command {
        Command::Run { config } => {
            let config = ExperimentConfig::load(&config)?;
            let out = run_experiment(&config, output_override().as_deref())?;
            for (name, secs) in &out.timings {
                eprintln!("{name:>12}: {secs:8.3} s");
            }
            let est = &out.report.estimate;
            println!(
                "topological: {} (betti {:?}), mdl: {}, aic: {}",
                match est.n {
                    Some(n) => format!("{n} sources"),
                    None => est.status.to_string(),
                },
                est.betti_observed,
                out.report.mdl,
                out.report.aic
            );
            println!("report: {}", out.report_path.display());
        }
        Command::Sweep {
            config,
            axis,
            values,
            reps,
        } => {
            let config = ExperimentConfig::load(&config)?;
            let table = sweep(&config, &axis, &values, reps)?;
            let csv = table.to_csv();
            print!("{csv}");
            let out_dir = output_override().unwrap_or_else(|| config.output_dir.clone());
            std::fs::create_dir_all(&out_dir).map_err(|source| CliError::Io {
                action: "create",
                path: out_dir.clone(),
                source,
            })?;
            let path = out_dir.join(format!("sweep_{}.csv", table.axis));
            std::fs::write(&path, csv).map_err(|source| CliError::Io {
                action: "write",
                path: path.clone(),
                source,
            })?;
            eprintln!("table: {}", path.display());
        }
        Command::Plot {
            barcode,
            out,
            fraction,
        } => {
            let path = plot_barcode(&barcode, out.as_deref(), fraction)?;
            println!("svg: {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            let mut source = std::error::Error::source(&err);
            while let Some(inner) = source {
                eprintln!("  caused by: {inner}");
                source = inner.source();
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
