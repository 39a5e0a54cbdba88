//! `geomaug`: batch augmentation, single-image preview and metric tables.

mod augment;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geomaug_core::codec::{self, ImageFormat};
use geomaug_core::metrics::{self, DEFAULT_LOSS_WINDOW};
use geomaug_core::pipeline::{all_presets, PRESET_NAMES};
use geomaug_core::{preset, Pipeline, PipelineSpec};

#[derive(Parser)]
#[command(name = "geomaug", version, about = "Geometric-filter data augmentation for microscopy images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Augment every image of a class-per-directory dataset.
    Augment(AugmentArgs),
    /// Augment a single image and print the stages that fired.
    Preview(PreviewArgs),
    /// Compute affinity and diversity from training logs.
    Metrics(MetricsArgs),
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Pipeline JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Built-in preset name (see `geomaug presets`).
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Args)]
struct AugmentArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Overrides the seed of the pipeline.
    #[arg(long)]
    seed: Option<u64>,
    /// Augmented variants per source image.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    multiplier: u64,
    /// Worker threads (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

#[derive(Args)]
struct PreviewArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long = "in")]
    input: PathBuf,
    /// Output PNG.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    index: u64,
}

#[derive(Args)]
struct MetricsArgs {
    /// Training log CSV.
    #[arg(long)]
    logs: PathBuf,
    /// Augmentation name of the un-augmented runs.
    #[arg(long)]
    baseline: String,
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG scatter plot of affinity against diversity.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Trailing epochs averaged into the converged loss.
    #[arg(long, default_value_t = DEFAULT_LOSS_WINDOW, value_parser = parse_window)]
    window: usize,
}

fn parse_window(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

impl Source {
    fn load(&self, seed: Option<u64>) -> anyhow::Result<PipelineSpec> {
        let mut spec = match (&self.config, &self.preset) {
            (Some(path), None) => PipelineSpec::load(path)?,
            (None, Some(name)) => preset(name)?,
            _ => unreachable!("clap enforces exactly one source"),
        };
        if let Some(seed) = seed {
            spec.seed = seed;
        }
        Ok(spec)
    }
}

fn preview(args: &PreviewArgs) -> anyhow::Result<()> {
    let spec = args.source.load(args.seed)?;
    let pipeline = Pipeline::new(spec)?;
    let img = codec::decode(&args.input)?;
    let (out, trace) = pipeline.apply_traced(&img, args.index)?;
    codec::encode(&out.to_u8(), &args.out, ImageFormat::Png)?;
    println!("{trace}");
    Ok(())
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).map_err(|e| geomaug_core::Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    Ok(())
}

fn run_metrics(args: &MetricsArgs) -> anyhow::Result<()> {
    let records = metrics::read_logs_path(&args.logs)?;
    let base = metrics::baseline_from(&records, &args.baseline)?;
    let points = metrics::aggregate(&records, &base, args.window)?;
    metrics::write_points_path(&args.out, &points)?;
    if let Some(plot) = &args.plot {
        write_text(plot, &metrics::scatter_svg(&points))?;
    }
    for p in &points {
        println!(
            "{}: affinity {:.4} ± {:.4}, diversity {:.4} ± {:.4} (n={})",
            p.augmentation_name, p.affinity, p.affinity_std, p.diversity, p.diversity_std, p.n_replicates
        );
    }
    Ok(())
}

fn list_presets() {
    for (key, spec) in PRESET_NAMES.iter().zip(all_presets()) {
        println!("{key:<25} {}", spec.describe());
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Augment(args) => {
            let spec = args.source.load(args.seed)?;
            let summary = augment::run(&augment::Job {
                spec,
                input: args.input,
                out: args.out,
                multiplier: args.multiplier,
                jobs: args.jobs.map(|j| j as usize),
            })?;
            println!("{summary}");
            Ok(())
        }
        Command::Preview(args) => preview(&args),
        Command::Metrics(args) => run_metrics(&args),
        Command::Presets => {
            list_presets();
            Ok(())
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let config = err
        .chain()
        .filter_map(|e| e.downcast_ref::<geomaug_core::Error>())
        .any(geomaug_core::Error::is_config);
    if config {
        2
    } else {
        1
    }
}

/// Context chain down to the first library error, whose message already
/// embeds its own cause.
fn message(err: &anyhow::Error) -> String {
    let mut parts = Vec::new();
    for cause in err.chain() {
        parts.push(cause.to_string());
        if cause.is::<geomaug_core::Error>() {
            break;
        }
    }
    parts.join(": ")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("GEOMAUG_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", message(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}
