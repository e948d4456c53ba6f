//! Command-line entry point: `screen` ranks the feature blocks of a CSV
//! file, `simulate` runs a Monte Carlo benchmark preset, `converge` runs
//! the sample-size decay diagnostic.
//!
//! Every option can also come from a flat `key=value` config file
//! (`--config`); file values win over flags, with a warning. Each run
//! writes a `manifest.json` next to its reports with the fully resolved
//! configuration. Exit codes: 0 success, 1 data/validation error,
//! 2 usage error.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::convergence::{converge, ConvergenceConfig};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::screen::{cutoff_d, rank_and_select, screen_dataset, ScreeningResult, SelectionRule};
use crate::simulate::{
    find_preset, run_replications, EvalReport, ModelId, ModelSpec, ScreeningMethod,
};
use crate::{baselines, simulate};

const ENV_WORKERS: &str = "DCSCREEN_WORKERS";

#[derive(Parser, Debug)]
#[command(
    name = "dcscreen",
    version,
    about = "Distance-correlation feature screening and benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank the feature blocks of a CSV dataset by marginal utility
    Screen(ScreenArgs),
    /// Run a Monte Carlo benchmark preset and write its evaluation report
    Simulate(SimulateArgs),
    /// Measure how the screening utilities converge as n grows
    Converge(ConvergeArgs),
}

#[derive(Args, Debug)]
struct ScreenArgs {
    /// Input CSV file with one header row
    #[arg(long)]
    input: Option<PathBuf>,
    /// Response columns: 1-based ranges over the CSV columns, e.g. "6" or "5-6"
    #[arg(long)]
    response_cols: Option<String>,
    /// Optional predictor grouping, e.g. "1-3;4;5-6" (1-based, predictors only)
    #[arg(long)]
    groups: Option<String>,
    /// Screening method: dcsis (default), sis, or sirs
    #[arg(long)]
    method: Option<String>,
    /// Selection rule: top-d (default) or threshold
    #[arg(long)]
    rule: Option<String>,
    /// d for top-d: an integer, or "auto" for [n/log n] capped at the block count
    #[arg(long)]
    d: Option<String>,
    /// c for the threshold rule (requires --rule threshold)
    #[arg(long)]
    c: Option<f64>,
    /// kappa for the threshold rule, in [0, 1/2)
    #[arg(long)]
    kappa: Option<f64>,
    /// Worker threads (default: DCSCREEN_WORKERS or all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory, created if missing (default ".")
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Flat key=value config file; file values win over flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Benchmark preset name, e.g. "1a-case1-desk" (see `--preset list`)
    #[arg(long)]
    preset: Option<String>,
    /// Screening method: dcsis (default), sis, or sirs
    #[arg(long)]
    method: Option<String>,
    /// Override the preset's replication count
    #[arg(long)]
    reps: Option<usize>,
    /// Master seed for the replication streams
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: DCSCREEN_WORKERS or all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory, created if missing (default ".")
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Flat key=value config file; file values win over flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    /// Model to diagnose: 1a, 1b, 1c, 1d, 2, 3a, 3b, or noise (default 1a)
    #[arg(long)]
    preset: Option<String>,
    /// Number of predictors (default 50)
    #[arg(long)]
    p: Option<usize>,
    /// Design AR correlation (default 0.5)
    #[arg(long)]
    rho: Option<f64>,
    /// Comma-separated sample-size grid (default "50,100,200,400")
    #[arg(long)]
    grid: Option<String>,
    /// Repetitions per grid point (default 20)
    #[arg(long)]
    seeds: Option<usize>,
    /// Sample size of the large-sample surrogate (default 20000)
    #[arg(long)]
    surrogate_n: Option<usize>,
    /// Master seed
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: DCSCREEN_WORKERS or all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory, created if missing (default ".")
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Flat key=value config file; file values win over flags
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Parses the process arguments, runs the selected command, and returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // Help and version requests are successes; everything else is a
            // usage error.
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Screen(args) => cmd_screen(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Converge(args) => cmd_converge(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

// ---- config-file handling ------------------------------------------------

fn load_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path)?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!(
                "{}:{}: expected key=value, got `{line}`",
                path.display(),
                lineno + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Replaces `slot` with the config-file value for `key`, warning when a
/// differing flag value is overridden.
fn merge_key<T>(map: &mut BTreeMap<String, String>, key: &str, slot: &mut Option<T>) -> Result<()>
where
    T: FromStr + PartialEq + Display,
{
    if let Some(raw) = map.remove(key) {
        let parsed: T = raw.parse().map_err(|_| {
            Error::InvalidConfig(format!("bad config value for `{key}`: `{raw}`"))
        })?;
        if let Some(old) = slot.as_ref() {
            if *old != parsed {
                eprintln!("warning: config file overrides --{key} ({old} -> {parsed})");
            }
        }
        *slot = Some(parsed);
    }
    Ok(())
}

fn merge_path(
    map: &mut BTreeMap<String, String>,
    key: &str,
    slot: &mut Option<PathBuf>,
) -> Result<()> {
    if let Some(raw) = map.remove(key) {
        let parsed = PathBuf::from(&raw);
        if let Some(old) = slot.as_ref() {
            if *old != parsed {
                eprintln!(
                    "warning: config file overrides --{key} ({} -> {raw})",
                    old.display()
                );
            }
        }
        *slot = Some(parsed);
    }
    Ok(())
}

fn reject_leftover(map: BTreeMap<String, String>) -> Result<()> {
    if let Some(key) = map.into_keys().next() {
        return Err(Error::InvalidConfig(format!("unknown config key `{key}`")));
    }
    Ok(())
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidConfig(format!("missing required option --{flag}")))
}

// ---- shared plumbing -------------------------------------------------------

fn resolve_workers(explicit: Option<usize>) -> Result<usize> {
    let workers = match explicit {
        Some(w) => w,
        None => match std::env::var(ENV_WORKERS) {
            Ok(raw) => raw.parse().map_err(|_| {
                Error::InvalidConfig(format!("bad {ENV_WORKERS} value `{raw}`"))
            })?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if workers == 0 {
        return Err(Error::InvalidConfig("worker count must be >= 1".into()));
    }
    Ok(workers)
}

fn with_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn prepare_out_dir(out_dir: &Option<PathBuf>) -> Result<PathBuf> {
    let dir = out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidConfig(format!("serialization failed: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[derive(Serialize)]
struct Manifest {
    command: &'static str,
    version: &'static str,
    seed: Option<u64>,
    workers: usize,
    config: BTreeMap<String, String>,
}

fn write_manifest(
    dir: &Path,
    command: &'static str,
    seed: Option<u64>,
    workers: usize,
    config: BTreeMap<String, String>,
) -> Result<()> {
    let manifest = Manifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        seed,
        workers,
        config,
    };
    write_json(&dir.join("manifest.json"), &manifest)
}

// ---- screen ----------------------------------------------------------------

#[derive(Serialize)]
struct SelectedReport<'a> {
    n: usize,
    num_blocks: usize,
    method: String,
    rule: SelectionRule,
    selected: &'a [usize],
    degenerate_blocks: &'a [usize],
}

fn cmd_screen(mut args: ScreenArgs) -> Result<()> {
    if let Some(config) = &args.config {
        let mut map = load_config_file(config)?;
        merge_path(&mut map, "input", &mut args.input)?;
        merge_key(&mut map, "response-cols", &mut args.response_cols)?;
        merge_key(&mut map, "groups", &mut args.groups)?;
        merge_key(&mut map, "method", &mut args.method)?;
        merge_key(&mut map, "rule", &mut args.rule)?;
        merge_key(&mut map, "d", &mut args.d)?;
        merge_key(&mut map, "c", &mut args.c)?;
        merge_key(&mut map, "kappa", &mut args.kappa)?;
        merge_key(&mut map, "workers", &mut args.workers)?;
        merge_path(&mut map, "out-dir", &mut args.out_dir)?;
        reject_leftover(map)?;
    }

    let input = require(args.input, "input")?;
    let response_cols = require(args.response_cols, "response-cols")?;
    let method = ScreeningMethod::parse(args.method.as_deref().unwrap_or("dcsis"))?;
    let workers = resolve_workers(args.workers)?;
    let out_dir = prepare_out_dir(&args.out_dir)?;

    let data = Dataset::load_csv(&input, &response_cols, args.groups.as_deref())?;

    // Report method/data incompatibilities before any heavy compute.
    if method != ScreeningMethod::DcSis {
        if data.q() != 1 {
            return Err(Error::UnsupportedResponse { q: data.q() });
        }
        if !data.all_singletons() {
            return Err(Error::UnsupportedGrouping);
        }
    }

    let rule = resolve_rule(&args.rule, &args.d, args.c, args.kappa, data.n(), data.num_blocks())?;
    let result: ScreeningResult = with_pool(workers, || match method {
        ScreeningMethod::DcSis => screen_dataset(&data, rule),
        ScreeningMethod::Sis => {
            baselines::sis_utilities(&data).and_then(|u| rank_and_select(&u, data.n(), rule))
        }
        ScreeningMethod::Sirs => {
            baselines::sirs_utilities(&data).and_then(|u| rank_and_select(&u, data.n(), rule))
        }
    })??;

    for &block in &result.degenerate {
        eprintln!(
            "warning: block {block} ({}) has an undefined distance correlation; utility set to 0",
            data.block_name(block)
        );
    }

    let mut table = String::from("block,name,utility,rank\n");
    let mut rank_of = vec![0usize; result.utilities.len() + 1];
    for (idx, &block) in result.ranking.iter().enumerate() {
        rank_of[block] = idx + 1;
    }
    for (rank, block) in rank_of.iter().zip(0..).skip(1) {
        table.push_str(&format!(
            "{block},{},{},{rank}\n",
            data.block_name(block),
            result.utility_of(block),
        ));
    }
    fs::write(out_dir.join("utilities.csv"), table)?;

    write_json(
        &out_dir.join("selected.json"),
        &SelectedReport {
            n: data.n(),
            num_blocks: data.num_blocks(),
            method: method.to_string(),
            rule: result.rule,
            selected: &result.selected,
            degenerate_blocks: &result.degenerate,
        },
    )?;

    let mut config = BTreeMap::new();
    config.insert("input".into(), input.display().to_string());
    config.insert("response-cols".into(), response_cols);
    if let Some(groups) = args.groups {
        config.insert("groups".into(), groups);
    }
    config.insert("method".into(), method.to_string());
    config.insert("rule".into(), rule_summary(&rule));
    write_manifest(&out_dir, "screen", None, workers, config)?;
    Ok(())
}

fn resolve_rule(
    rule: &Option<String>,
    d: &Option<String>,
    c: Option<f64>,
    kappa: Option<f64>,
    n: usize,
    num_blocks: usize,
) -> Result<SelectionRule> {
    match rule.as_deref().unwrap_or("top-d") {
        "top-d" => {
            let d = match d.as_deref().unwrap_or("auto") {
                "auto" => cutoff_d(n, 1).min(num_blocks),
                raw => raw.parse().map_err(|_| {
                    Error::InvalidConfig(format!("--d expects an integer or \"auto\", got `{raw}`"))
                })?,
            };
            Ok(SelectionRule::TopD { d })
        }
        "threshold" => {
            let c = require(c, "c")?;
            let kappa = require(kappa, "kappa")?;
            Ok(SelectionRule::Threshold { c, kappa })
        }
        other => Err(Error::InvalidConfig(format!(
            "unknown rule `{other}` (expected top-d or threshold)"
        ))),
    }
}

fn rule_summary(rule: &SelectionRule) -> String {
    match rule {
        SelectionRule::TopD { d } => format!("top-d d={d}"),
        SelectionRule::Threshold { c, kappa } => format!("threshold c={c} kappa={kappa}"),
    }
}

// ---- simulate ----------------------------------------------------------------

#[derive(Serialize)]
struct SimulationReportFile<'a> {
    preset: &'a str,
    model: String,
    method: String,
    n: usize,
    p: usize,
    rho: f64,
    seed: u64,
    report: &'a EvalReport,
}

fn cmd_simulate(mut args: SimulateArgs) -> Result<()> {
    if let Some(config) = &args.config {
        let mut map = load_config_file(config)?;
        merge_key(&mut map, "preset", &mut args.preset)?;
        merge_key(&mut map, "method", &mut args.method)?;
        merge_key(&mut map, "reps", &mut args.reps)?;
        merge_key(&mut map, "seed", &mut args.seed)?;
        merge_key(&mut map, "workers", &mut args.workers)?;
        merge_path(&mut map, "out-dir", &mut args.out_dir)?;
        reject_leftover(map)?;
    }

    let preset_name = require(args.preset, "preset")?;
    if preset_name == "list" {
        for preset in simulate::all_presets() {
            println!("{}", preset.name);
        }
        return Ok(());
    }
    let preset = find_preset(&preset_name)?;
    let method = ScreeningMethod::parse(args.method.as_deref().unwrap_or("dcsis"))?;
    let reps = args.reps.unwrap_or(preset.reps);
    let seed = args.seed.unwrap_or(0);
    let workers = resolve_workers(args.workers)?;
    let out_dir = prepare_out_dir(&args.out_dir)?;

    let spec = ModelSpec {
        model: preset.model,
        n: preset.n,
        p: preset.p,
        rho: preset.rho,
        c_coeffs: ModelSpec::DEFAULT_C,
        seed,
    };
    let cutoffs: Vec<usize> = (1..=3).map(|m| cutoff_d(preset.n, m)).collect();
    let report = with_pool(workers, || run_replications(&spec, method, reps, &cutoffs))??;

    write_json(
        &out_dir.join("eval_report.json"),
        &SimulationReportFile {
            preset: &preset.name,
            model: preset.model.to_string(),
            method: method.to_string(),
            n: preset.n,
            p: preset.p,
            rho: preset.rho,
            seed,
            report: &report,
        },
    )?;
    fs::write(out_dir.join("eval_report.csv"), report.to_table_csv())?;

    let mut config = BTreeMap::new();
    config.insert("preset".into(), preset.name.clone());
    config.insert("method".into(), method.to_string());
    config.insert("reps".into(), reps.to_string());
    write_manifest(&out_dir, "simulate", Some(seed), workers, config)?;
    Ok(())
}

// ---- converge ----------------------------------------------------------------

#[derive(Serialize)]
struct ConvergenceReportFile<'a> {
    model: String,
    p: usize,
    rho: f64,
    grid: &'a [usize],
    seed: u64,
    #[serde(flatten)]
    report: &'a crate::convergence::ConvergenceReport,
}

fn cmd_converge(mut args: ConvergeArgs) -> Result<()> {
    if let Some(config) = &args.config {
        let mut map = load_config_file(config)?;
        merge_key(&mut map, "preset", &mut args.preset)?;
        merge_key(&mut map, "p", &mut args.p)?;
        merge_key(&mut map, "rho", &mut args.rho)?;
        merge_key(&mut map, "grid", &mut args.grid)?;
        merge_key(&mut map, "seeds", &mut args.seeds)?;
        merge_key(&mut map, "surrogate-n", &mut args.surrogate_n)?;
        merge_key(&mut map, "seed", &mut args.seed)?;
        merge_key(&mut map, "workers", &mut args.workers)?;
        merge_path(&mut map, "out-dir", &mut args.out_dir)?;
        reject_leftover(map)?;
    }

    let model = ModelId::parse(args.preset.as_deref().unwrap_or("1a"))?;
    let mut cfg = ConvergenceConfig::new(model, args.p.unwrap_or(50), args.rho.unwrap_or(0.5));
    if let Some(grid) = &args.grid {
        cfg.grid = grid
            .split(',')
            .map(|tok| {
                tok.trim().parse().map_err(|_| {
                    Error::InvalidConfig(format!("bad grid entry `{tok}` in `{grid}`"))
                })
            })
            .collect::<Result<_>>()?;
    }
    if let Some(seeds) = args.seeds {
        cfg.seeds = seeds;
    }
    if let Some(surrogate_n) = args.surrogate_n {
        cfg.surrogate_n = surrogate_n;
    }
    cfg.seed = args.seed.unwrap_or(0);
    let workers = resolve_workers(args.workers)?;
    let out_dir = prepare_out_dir(&args.out_dir)?;

    let report = with_pool(workers, || converge(&cfg))??;

    write_json(
        &out_dir.join("convergence.json"),
        &ConvergenceReportFile {
            model: model.to_string(),
            p: cfg.p,
            rho: cfg.rho,
            grid: &cfg.grid,
            seed: cfg.seed,
            report: &report,
        },
    )?;
    fs::write(out_dir.join("convergence.csv"), report.to_table_csv())?;

    let mut config = BTreeMap::new();
    config.insert("preset".into(), model.to_string());
    config.insert("p".into(), cfg.p.to_string());
    config.insert("rho".into(), cfg.rho.to_string());
    config.insert(
        "grid".into(),
        cfg.grid
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    config.insert("seeds".into(), cfg.seeds.to_string());
    config.insert("surrogate-n".into(), cfg.surrogate_n.to_string());
    write_manifest(&out_dir, "converge", Some(cfg.seed), workers, config)?;
    Ok(())
}
