//! `evoca`: evolve, simulate, render and report on 1-d cellular automata.

mod ic;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use evoca_core::ca::{evolve, RuleTable, SpacetimeHistory};
use evoca_core::harness::{self, report, ExperimentConfig};
use evoca_core::objectives::Task;
use evoca_core::optimizers::Algorithm;
use evoca_core::render;

use crate::ic::IcSpec;

#[derive(Parser)]
#[command(name = "evoca", version, about = "Evolve and inspect 1-d binary cellular automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a multi-trial rule search and write its artifacts.
    Evolve(EvolveArgs),
    /// Print a spacetime history as rows of 0/1.
    Simulate(SimulateArgs),
    /// Draw a spacetime history as a PBM or PNG image.
    Render(RenderArgs),
    /// Merge fitness curves and tabulate every experiment under a directory.
    Report(ReportArgs),
}

#[derive(Args)]
struct EvolveArgs {
    /// Base configuration (JSON); flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    task: Option<Task>,
    #[arg(long = "algo")]
    algorithm: Option<Algorithm>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Neighborhood radius of evolved rules.
    #[arg(long)]
    radius: Option<u32>,
    /// Lattice width.
    #[arg(long)]
    n: Option<usize>,
    /// CA steps per evaluation.
    #[arg(long)]
    t: Option<usize>,
    /// ICs per fitness evaluation.
    #[arg(long)]
    batch: Option<usize>,
    /// Population or swarm size.
    #[arg(long)]
    population: Option<usize>,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "EVOCA_WORKERS")]
    workers: Option<usize>,
    /// Per-trial time budget in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Output directory for artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HistoryArgs {
    /// `r<radius>:<hex>` or a decimal number for radius 1.
    #[arg(long)]
    rule: RuleTable,
    /// Lattice width.
    #[arg(long, default_value_t = 149)]
    n: usize,
    /// Number of steps after the IC.
    #[arg(long, visible_alias = "t", default_value_t = 150)]
    steps: usize,
    /// single-one | all-zeros | all-ones | density:<rho> | hex:<digits>
    #[arg(long, default_value = "single-one")]
    ic: IcSpec,
    /// Cell of the single one (default: center).
    #[arg(long)]
    at: Option<usize>,
    /// Seed for `density:` ICs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    history: HistoryArgs,
    /// Write the rows here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also draw the history to this image path.
    #[arg(long)]
    render: Option<PathBuf>,
    /// Pixels per cell for `--render`.
    #[arg(long, default_value_t = 1)]
    scale: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImageFormat {
    Pbm,
    Png,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    history: HistoryArgs,
    #[arg(long)]
    out: PathBuf,
    /// Image format (default: from the file extension, else PBM).
    #[arg(long)]
    format: Option<ImageFormat>,
    /// Pixels per cell.
    #[arg(long, default_value_t = 1)]
    scale: usize,
}

#[derive(Args)]
struct ReportArgs {
    /// Experiment directory, searched recursively for summary.json.
    dir: PathBuf,
    /// Merged `experiment,epoch,trial,best_fitness` CSV; `-` is standard
    /// output, in which case the table goes to standard error.
    #[arg(long, default_value = "-")]
    csv: PathBuf,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl ToString) -> Failure {
    Failure::Runtime(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = match cli.command {
        Command::Evolve(a) => cmd_evolve(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Render(a) => cmd_render(a),
        Command::Report(a) => cmd_report(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn cmd_evolve(a: EvolveArgs) -> Result<(), Failure> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::load(path).map_err(usage)?,
        None => ExperimentConfig::default(),
    };
    macro_rules! set {
        ($($flag:ident => $field:ident),*) => { $( if let Some(v) = a.$flag { cfg.$field = v; } )* };
    }
    set!(task => task, algorithm => algorithm, epochs => epochs, trials => trials, seed => seed,
         radius => radius, n => width, t => steps, batch => batch, workers => workers);
    if a.population.is_some() {
        cfg.overrides.population = a.population;
    }
    if a.timeout.is_some() {
        cfg.trial_timeout_secs = a.timeout;
    }
    if a.out.is_some() {
        cfg.output_dir = a.out;
    }
    cfg.validate().map_err(usage)?;

    let summary = harness::run_experiment(&cfg).map_err(runtime)?;
    let fmt = |v: Option<f64>| v.map_or("n/a".to_string(), |x| format!("{x:.4}"));
    println!("{:<8} {:<8} {:>8} {:>8} {:>7}", "method", "task", "mean", "stddev", "trials");
    println!(
        "{:<8} {:<8} {:>8} {:>8} {:>7}",
        cfg.algorithm.to_string(),
        cfg.task.to_string(),
        fmt(summary.mean_final_fitness),
        fmt(summary.std_final_fitness),
        format!("{}/{}", summary.completed_trials, cfg.trials),
    );
    let failed: Vec<String> = summary
        .trials
        .iter()
        .filter_map(|t| t.error.as_ref().map(|e| format!("trial {}: {e}", t.trial)))
        .collect();
    if !failed.is_empty() {
        return Err(runtime(failed.join("\n")));
    }
    Ok(())
}

fn build_history(h: &HistoryArgs) -> Result<SpacetimeHistory, Failure> {
    let ic = h.ic.build(h.n, h.at, h.seed).map_err(usage)?;
    evolve(&ic, &h.rule, h.steps).map_err(usage)
}

fn write_image(history: &SpacetimeHistory, path: &Path, format: ImageFormat, scale: usize) -> Result<(), Failure> {
    let bytes = match format {
        ImageFormat::Pbm => render::to_pbm(history, scale),
        ImageFormat::Png => encode_png(history, scale).map_err(runtime)?,
    };
    fs::write(path, bytes).map_err(|e| runtime(format!("{}: {e}", path.display())))
}

fn encode_png(history: &SpacetimeHistory, scale: usize) -> Result<Vec<u8>, png::EncodingError> {
    let (width, height, px) = render::pixels(history, scale);
    let gray: Vec<u8> = px.iter().map(|&on| if on { 0 } else { 255 }).collect();
    let mut out = Vec::new();
    let mut encoder = png::Encoder::new(&mut out, width as u32, height as u32);
    encoder.set_color(png::ColorType::Grayscale);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder.write_header()?;
    writer.write_image_data(&gray)?;
    writer.finish()?;
    Ok(out)
}

fn format_for(path: &Path, explicit: Option<ImageFormat>) -> ImageFormat {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("png") => ImageFormat::Png,
        _ => ImageFormat::Pbm,
    })
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), Failure> {
    let history = build_history(&a.history)?;
    let text = history.to_text();
    match &a.out {
        Some(path) => fs::write(path, &text).map_err(|e| runtime(format!("{}: {e}", path.display())))?,
        None => io::stdout().write_all(text.as_bytes()).map_err(runtime)?,
    }
    if let Some(path) = &a.render {
        write_image(&history, path, format_for(path, None), a.scale)?;
    }
    Ok(())
}

fn cmd_render(a: RenderArgs) -> Result<(), Failure> {
    let history = build_history(&a.history)?;
    write_image(&history, &a.out, format_for(&a.out, a.format), a.scale)
}

fn cmd_report(a: ReportArgs) -> Result<(), Failure> {
    let reports = report::collect(&a.dir).map_err(runtime)?;
    let to_stdout = a.csv.as_os_str() == "-";
    let mut csv = String::from("experiment,epoch,trial,best_fitness\n");
    for r in &reports {
        let label = r.dir.strip_prefix(&a.dir).ok().filter(|p| !p.as_os_str().is_empty());
        let label = label.map_or(".".to_string(), |p| p.display().to_string());
        for (epoch, trial, fitness) in &r.curves {
            csv.push_str(&format!("{label},{epoch},{trial},{fitness}\n"));
        }
    }
    let table: String = reports.iter().map(|r| r.table_row() + "\n").collect();
    if to_stdout {
        let mut out = BufWriter::new(io::stdout());
        out.write_all(csv.as_bytes()).and_then(|_| out.flush()).map_err(runtime)?;
        eprint!("{table}");
    } else {
        fs::write(&a.csv, csv).map_err(|e| runtime(format!("{}: {e}", a.csv.display())))?;
        print!("{table}");
    }
    Ok(())
}
