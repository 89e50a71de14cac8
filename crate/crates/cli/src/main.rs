use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hsbb_core::generate::{appendix_family, generate_random};
use hsbb_core::oracle::{brute_force, DEFAULT_CAP};
use hsbb_core::{read_instance, solve, GreedyMode, LocalSearch, LoopItem, Report, Settings};
use log::{error, info};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

mod stats;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_TIMEOUT: u8 = 2;
const EXIT_NOT_HITTING: u8 = 3;

#[derive(Parser)]
#[command(name = "hsbb", version, about = "Exact minimum hitting set solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print its solution as JSON.
    Solve {
        instance: PathBuf,
        /// Write the full run report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        settings: SettingsArgs,
    },
    /// Check that a solution hits every edge. Exit code 3 if it does not.
    Verify {
        instance: PathBuf,
        /// JSON array of vertex ids, or a report file.
        solution: PathBuf,
    },
    /// Exhaustive optimum for small instances.
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Random instance with uniform edge sizes.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Instance family separating the efficiency and packing bounds.
    GenAppendixFamily {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Aggregate run reports into one JSON summary.
    Stats {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
    /// Solve many instances in parallel, one report per instance.
    Batch {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        settings: SettingsArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GreedyArg {
    Off,
    OncePerNode,
    EveryLoop,
    BeforeExpensive,
}

#[derive(Clone, Copy, ValueEnum)]
enum LocalSearchArg {
    Off,
    OnPacking,
    OnSumOverPacking,
}

#[derive(Args, Clone)]
struct SettingsArgs {
    /// Highest-degree vertices probed by the repacking costly discard.
    #[arg(long, default_value_t = 3)]
    repack_count: usize,
    #[arg(long, value_enum, default_value_t = GreedyArg::OncePerNode)]
    greedy_mode: GreedyArg,
    /// May be repeated.
    #[arg(long, value_parser = parse_bound)]
    disable_bound: Vec<LoopItem>,
    /// May be repeated.
    #[arg(long, value_parser = parse_reduction)]
    disable_reduction: Vec<LoopItem>,
    #[arg(long, value_enum, default_value_t = LocalSearchArg::Off)]
    local_search: LocalSearchArg,
    /// Explore the exclusion branch first.
    #[arg(long)]
    exclusion_first: bool,
    /// Seconds; stop with the best solution found so far.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_loop_item(name: &str, bound: bool) -> Result<LoopItem, String> {
    let pool: &[LoopItem] = if bound {
        &LoopItem::BOUNDS
    } else {
        &LoopItem::REDUCTIONS
    };
    pool.iter()
        .copied()
        .find(|i| i.name() == name)
        .ok_or_else(|| {
            let names: Vec<_> = pool.iter().map(|i| i.name()).collect();
            format!("expected one of: {}", names.join(", "))
        })
}

fn parse_bound(name: &str) -> Result<LoopItem, String> {
    parse_loop_item(name, true)
}

fn parse_reduction(name: &str) -> Result<LoopItem, String> {
    parse_loop_item(name, false)
}

impl SettingsArgs {
    fn to_settings(&self) -> Result<Settings> {
        if let Some(t) = self.time_limit {
            if !(t.is_finite() && t >= 0.0) {
                bail!("--time-limit must be a non-negative number of seconds");
            }
        }
        let mut settings = Settings {
            repack_count: self.repack_count,
            greedy_mode: match self.greedy_mode {
                GreedyArg::Off => GreedyMode::Off,
                GreedyArg::OncePerNode => GreedyMode::OncePerNode,
                GreedyArg::EveryLoop => GreedyMode::EveryLoop,
                GreedyArg::BeforeExpensive => GreedyMode::BeforeExpensive,
            },
            local_search: match self.local_search {
                LocalSearchArg::Off => LocalSearch::Off,
                LocalSearchArg::OnPacking => LocalSearch::OnPacking,
                LocalSearchArg::OnSumOverPacking => LocalSearch::OnSumOverPacking,
            },
            inclusion_first: !self.exclusion_first,
            time_limit_secs: self.time_limit,
            rng_seed: self.seed,
            ..Settings::default()
        };
        for b in &self.disable_bound {
            settings.enabled_bounds.remove(b);
        }
        for r in &self.disable_reduction {
            settings.enabled_reductions.remove(r);
        }
        Ok(settings)
    }
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    opt_size: usize,
    optimal: bool,
    solution: &'a [u32],
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
            Ok(())
        }
    }
}

fn run_solve(instance: &Path, report_path: Option<&Path>, settings: &Settings) -> Result<u8> {
    let mut inst = read_instance(instance)?;
    let report = solve(&mut inst, settings);
    if let Some(p) = report_path {
        write_output(Some(p), &report.to_json())?;
    }
    let out = SolveOutput {
        opt_size: report.opt_size,
        optimal: report.optimal,
        solution: &report.solution,
    };
    write_output(None, &serde_json::to_string(&out)?)?;
    Ok(if report.optimal {
        EXIT_OK
    } else {
        EXIT_TIMEOUT
    })
}

fn read_solution(path: &Path) -> Result<Vec<u64>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if let Ok(ids) = serde_json::from_str::<Vec<u64>>(&text) {
        return Ok(ids);
    }
    let report = Report::from_json(&text).with_context(|| {
        format!(
            "{}: expected a JSON array of vertex ids or a report",
            path.display()
        )
    })?;
    Ok(report.solution.into_iter().map(u64::from).collect())
}

fn run_verify(instance: &Path, solution: &Path) -> Result<u8> {
    let inst = read_instance(instance)?;
    let ids = read_solution(solution)?;
    let n = inst.num_vertices_total() as u64;
    if let Some(bad) = ids.iter().find(|&&v| v >= n) {
        bail!("vertex id out of range: {bad} (instance has {n} vertices)");
    }
    let ids: Vec<u32> = ids.into_iter().map(|v| v as u32).collect();
    let unhit = inst
        .edges()
        .find(|&f| !inst.edge(f).any(|v| ids.contains(&v)));
    match unhit {
        None => {
            println!("valid: hitting set of size {}", ids.len());
            Ok(EXIT_OK)
        }
        Some(f) => {
            println!("invalid: edge {f} is not hit");
            Ok(EXIT_NOT_HITTING)
        }
    }
}

fn run_oracle(instance: &Path, cap: usize) -> Result<u8> {
    let inst = read_instance(instance)?;
    let (size, solution) = brute_force(&inst, cap)?;
    let out = SolveOutput {
        opt_size: size,
        optimal: true,
        solution: &solution,
    };
    println!("{}", serde_json::to_string(&out)?);
    Ok(EXIT_OK)
}

fn run_batch(
    instances: &[PathBuf],
    out_dir: &Path,
    jobs: Option<usize>,
    settings: &Settings,
) -> Result<u8> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()?;
    let codes: Vec<u8> = pool.install(|| {
        instances
            .par_iter()
            .map(|path| {
                let stem = path.file_stem().unwrap_or_default().to_string_lossy();
                let report_path = out_dir.join(format!("{stem}.report.json"));
                let outcome =
                    read_instance(path)
                        .map_err(anyhow::Error::from)
                        .and_then(|mut inst| {
                            let report = solve(&mut inst, settings);
                            write_output(Some(&report_path), &report.to_json())?;
                            Ok(report)
                        });
                match outcome {
                    Ok(r) => {
                        info!(
                            "{}: size {} optimal {}",
                            path.display(),
                            r.opt_size,
                            r.optimal
                        );
                        if r.optimal {
                            EXIT_OK
                        } else {
                            EXIT_TIMEOUT
                        }
                    }
                    Err(e) => {
                        error!("{}: {e:#}", path.display());
                        EXIT_ERROR
                    }
                }
            })
            .collect()
    });
    let mut summary = BTreeMap::new();
    for (path, code) in instances.iter().zip(&codes) {
        let status = match *code {
            EXIT_OK => "optimal",
            EXIT_TIMEOUT => "timeout",
            _ => "error",
        };
        summary.insert(path.display().to_string(), status);
    }
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(if codes.contains(&EXIT_ERROR) {
        EXIT_ERROR
    } else if codes.contains(&EXIT_TIMEOUT) {
        EXIT_TIMEOUT
    } else {
        EXIT_OK
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve {
            instance,
            report,
            settings,
        } => run_solve(&instance, report.as_deref(), &settings.to_settings()?),
        Command::Verify { instance, solution } => run_verify(&instance, &solution),
        Command::Oracle { instance, cap } => run_oracle(&instance, cap),
        Command::GenRandom {
            n,
            m,
            min_size,
            max_size,
            seed,
            output,
        } => {
            let file = generate_random(n, m, min_size, max_size, seed)?;
            write_output(output.as_deref(), &file.to_json())?;
            Ok(EXIT_OK)
        }
        Command::GenAppendixFamily { k, n, output } => {
            let file = appendix_family(k, n)?;
            write_output(output.as_deref(), &file.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Stats { reports } => {
            let summary = stats::aggregate(&reports)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            Ok(EXIT_OK)
        }
        Command::Batch {
            instances,
            out_dir,
            jobs,
            settings,
        } => run_batch(&instances, &out_dir, jobs, &settings.to_settings()?),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
