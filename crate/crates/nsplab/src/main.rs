use clap::{Parser, Subcommand};
use nsplab::config::ExperimentConfig;
use nsplab::sweep::SweepAxis;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "nsplab",
    about = "Verification scans and simulation campaigns for the scaled Navier-Stokes-Poisson systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute one campaign from a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (default: $NSPLAB_OUT or ./nsplab-out).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed override.
        #[arg(long)]
        seed: Option<u64>,
        /// Treat warnings as failures.
        #[arg(long, default_value_t = false)]
        strict: bool,
    },
    /// Run the campaign across an axis of values, one process-isolated run
    /// directory per point.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Axis: eps | kappa0 | grid.
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values.
        #[arg(long)]
        values: String,
        #[arg(long, default_value_t = 2)]
        workers: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Convert a finished run's CSV artifacts into gnuplot-ready data files.
    EmitPlots {
        /// Run directory containing manifest.json.
        #[arg(long)]
        run_dir: PathBuf,
    },
}

fn out_root(cli_out: Option<PathBuf>) -> PathBuf {
    cli_out
        .or_else(|| std::env::var_os("NSPLAB_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("nsplab-out"))
}

fn main() {
    let cli = Cli::parse();
    let code = match real_main(cli) {
        Ok(pass) => {
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn real_main(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run {
            config,
            out,
            seed,
            strict,
        } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let dir = out_root(out).join(format!("{}-{}", cfg.kind, &cfg.hash()[..12]));
            let manifest = nsplab::run(&cfg, &dir)?;
            for c in &manifest.criteria {
                println!(
                    "{}: {} (value {:.6e}, threshold {:.6e})",
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.value,
                    c.threshold
                );
            }
            println!(
                "manifest: {} ({} criteria, overall {})",
                dir.join("manifest.json").display(),
                manifest.criteria.len(),
                if manifest.pass { "PASS" } else { "FAIL" }
            );
            let _ = strict;
            Ok(manifest.pass)
        }
        Command::Sweep {
            config,
            out,
            axis,
            values,
            workers,
            seed,
        } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let axis: SweepAxis = axis.parse()?;
            let values: Vec<f64> = values
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<Result<_, _>>()?;
            let root = out_root(out).join(format!("sweep-{}-{}", cfg.kind, &cfg.hash()[..12]));
            let results = nsplab::sweep::sweep(&cfg, axis, &values, workers, &root)?;
            let mut all = true;
            for (v, m) in &results {
                println!("axis value {v}: {}", if m.pass { "PASS" } else { "FAIL" });
                all &= m.pass;
            }
            println!("uniformity report: {}", root.join("sweep_uniformity.json").display());
            Ok(all)
        }
        Command::EmitPlots { run_dir } => {
            let n = nsplab::plots::emit_plots(&run_dir)?;
            println!("emitted {n} figure(s) in {}", run_dir.display());
            Ok(true)
        }
    }
}
