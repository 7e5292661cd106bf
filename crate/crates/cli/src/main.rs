//! `skyrelay` command-line front end.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use skyrelay_core::io::plots::emit_plots;
use skyrelay_core::io::scenario::{parse_scenario, scenario_to_string};
use skyrelay_core::io::summary::{emit_summary, SummaryReport};
use skyrelay_core::io::timeseries::{emit_timeseries, parse_timeseries};
use skyrelay_core::{sweep, ConfigError, Error, Preset, RunOutput, ScenarioConfig};

#[derive(Parser, Debug)]
#[command(name = "skyrelay", version, about = "UAV relay swarm simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one scenario for one or more seeds.
    Run(RunArgs),
    /// Run presets over a range of seeds, one output directory per preset.
    Sweep(SweepArgs),
    /// Render plots from a time-series CSV.
    Plot(PlotArgs),
    /// Check a scenario file and print the resolved configuration.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output directory.
    #[arg(long, short, env = "SKYRELAY_OUT_DIR", default_value = "out")]
    out_dir: PathBuf,

    /// Skip SVG plots.
    #[arg(long)]
    no_plots: bool,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Scenario file (TOML). Conflicts with --preset.
    #[arg(long, conflicts_with = "preset")]
    scenario: Option<PathBuf>,

    /// Built-in preset: cb (classic boids) or rw (random walk).
    #[arg(long)]
    preset: Option<Preset>,

    /// Seeds: a single seed `7`, a range `0..30`, or a list `1,4,9`.
    #[arg(long, value_parser = parse_seeds)]
    seeds: Option<Seeds>,

    /// Override the number of steps.
    #[arg(long)]
    steps: Option<usize>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Presets to sweep; repeat or comma-separate.
    #[arg(long, value_delimiter = ',', default_values = ["cb", "rw"])]
    preset: Vec<Preset>,

    /// Seeds: a count `30` (meaning 0..30), a range `5..10`, or a list `1,4,9`.
    #[arg(long, value_parser = parse_seed_count, default_value = "30")]
    seeds: Seeds,

    /// Override the number of steps.
    #[arg(long)]
    steps: Option<usize>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Time-series CSV written by `run` or `sweep`.
    csv: PathBuf,

    /// Plot title; defaults to the file stem.
    #[arg(long)]
    title: Option<String>,

    /// Output directory.
    #[arg(long, short, env = "SKYRELAY_OUT_DIR", default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    scenario: PathBuf,

    /// Print the fully resolved scenario.
    #[arg(long)]
    print: bool,
}

#[derive(Debug, Clone, PartialEq)]
struct Seeds(Vec<u64>);

fn parse_seeds(s: &str) -> Result<Seeds, String> {
    let s = s.trim();
    let seeds: Vec<u64> = if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
        let b: u64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
        (a..b).collect()
    } else {
        s.split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|e| format!("bad seed `{p}`: {e}")))
            .collect::<Result<_, _>>()?
    };
    if seeds.is_empty() {
        return Err("no seeds selected".into());
    }
    Ok(Seeds(seeds))
}

/// Like [`parse_seeds`], but a lone number is a count starting at 0.
fn parse_seed_count(s: &str) -> Result<Seeds, String> {
    match s.trim().parse::<u64>() {
        Ok(0) => Err("no seeds selected".into()),
        Ok(n) => Ok(Seeds((0..n).collect())),
        Err(_) => parse_seeds(s),
    }
}

fn exit_code(category: &str) -> u8 {
    match category {
        "config" => 2,
        "io" => 3,
        "format" => 4,
        "empty" => 5,
        "plot" => 6,
        _ => 1,
    }
}

fn category(err: &anyhow::Error) -> &'static str {
    err.chain()
        .find_map(|e| {
            e.downcast_ref::<Error>()
                .map(Error::category)
                .or_else(|| e.downcast_ref::<ConfigError>().map(|_| "config"))
        })
        .unwrap_or("internal")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Plot(args) => plot(args),
        Command::Validate(args) => validate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let cat = category(&err);
            eprintln!("error[{cat}]: {err:#}");
            ExitCode::from(exit_code(cat))
        }
    }
}

fn load_config(scenario: Option<&Path>, preset: Option<Preset>, steps: Option<usize>) -> anyhow::Result<ScenarioConfig> {
    let mut config = match (scenario, preset) {
        (Some(path), _) => parse_scenario(path)?,
        (None, Some(p)) => ScenarioConfig::preset(p),
        (None, None) => ScenarioConfig::default(),
    };
    if let Some(steps) = steps {
        config.total_steps = steps;
    }
    config.validate()?;
    Ok(config)
}

/// Runs every seed of `config` and writes series, summary and plots to `dir`.
fn execute(config: &ScenarioConfig, seeds: &[u64], dir: &Path, plots: bool) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let result = sweep(config, seeds, true)?;
    for run in &result.runs {
        write_run(run, dir)?;
    }
    let report = SummaryReport::from_sweep(&result);
    emit_summary(&report, dir.join("summary.json"))?;
    let scenario_path = dir.join("scenario.toml");
    std::fs::write(&scenario_path, scenario_to_string(config)).map_err(|e| Error::io(&scenario_path, e))?;

    let best = result.best_run();
    if plots {
        let title = format!("{} seed {}", best.scenario, best.seed);
        emit_plots(&best.records, &title, dir.join("plots"))?;
    }
    eprintln!(
        "{}: best seed {} fully connected {:.1}% of {} steps; results in {}",
        config.name,
        best.seed,
        best.summary.connected_fraction * 100.0,
        best.summary.steps,
        dir.display()
    );
    Ok(())
}

fn write_run(run: &RunOutput, dir: &Path) -> anyhow::Result<()> {
    let s = &run.summary;
    eprintln!(
        "{} seed {}: connected {:.1}%, components < 20 {:.1}%, mean coverage {:.1}",
        run.scenario,
        run.seed,
        s.connected_fraction * 100.0,
        s.components_below_ceiling * 100.0,
        s.mean_coverage
    );
    emit_timeseries(&run.records, dir.join(format!("timeseries_seed{}.csv", run.seed)))?;
    Ok(())
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let config = load_config(args.scenario.as_deref(), args.preset, args.steps)?;
    let seeds = args.seeds.map_or_else(|| vec![config.seed], |s| s.0);
    execute(&config, &seeds, &args.output.out_dir, !args.output.no_plots)
}

fn run_sweep(args: SweepArgs) -> anyhow::Result<()> {
    let mut presets = args.preset.clone();
    presets.dedup();
    if presets.is_empty() {
        bail!(Error::from(ConfigError::Missing("preset")));
    }
    for preset in presets {
        let config = load_config(None, Some(preset), args.steps)?;
        let dir = args.output.out_dir.join(preset.name());
        execute(&config, &args.seeds.0, &dir, !args.output.no_plots)
            .with_context(|| format!("sweeping preset {}", preset.name()))?;
    }
    Ok(())
}

fn plot(args: PlotArgs) -> anyhow::Result<()> {
    let records = parse_timeseries(&args.csv)?;
    let title = args.title.unwrap_or_else(|| {
        args.csv
            .file_stem()
            .map_or_else(|| "timeseries".to_string(), |s| s.to_string_lossy().into_owned())
    });
    for path in emit_plots(&records, &title, &args.out_dir)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn validate(args: ValidateArgs) -> anyhow::Result<()> {
    let config = parse_scenario(&args.scenario)?;
    if args.print {
        print!("{}", scenario_to_string(&config));
    } else {
        println!("{}: ok", args.scenario.display());
    }
    Ok(())
}
