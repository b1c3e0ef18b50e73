//! Thin command-line front end; all the work lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use bbtc::io::InputFormat;
use bbtc::runspec::{
    cmd_baseline, cmd_bench, cmd_count, cmd_gen, cmd_partition, cmd_tasks, cmd_verify, Baseline,
    GenKind, RunSpec,
};
use bbtc::scheduler::{SchedulerConfig, TransferModel};
use bbtc::tasking::{Estimator, DEFAULT_DENSE_THRESHOLD};

#[derive(Parser)]
#[command(name = "bbtc", about = "Block-based triangle counting", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count triangles with the block pipeline (or a sequential baseline).
    Count(CountArgs),
    /// Cross-check every counting route against brute force on a small graph.
    Verify(VerifyArgs),
    /// Estimator study, cut-off sweep, and worker scaling tables.
    Bench(BenchArgs),
    /// Write a seeded synthetic graph as edge-list text.
    Gen(GenArgs),
    /// Print the symmetric rectilinear cuts and balance statistics.
    Partition(PartitionArgs),
    /// Dump the ordered task queue with weights and classifications.
    Tasks(TasksArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input graph file.
    #[arg(long)]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<InputFormat>,
}

impl InputArgs {
    fn format(&self) -> InputFormat {
        self.format
            .unwrap_or_else(|| InputFormat::infer(&self.input))
    }
}

fn parse_format(s: &str) -> Result<InputFormat, String> {
    match s {
        "edge-list" => Ok(InputFormat::EdgeList),
        "matrix-market" => Ok(InputFormat::MatrixMarket),
        other => Err(format!(
            "unknown format {other:?} (expected edge-list|matrix-market)"
        )),
    }
}

/// Part count: a number or "auto" (average-degree rule).
#[derive(Clone, Copy)]
struct PartArg(Option<usize>);

impl FromStr for PartArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(PartArg(None));
        }
        s.parse::<usize>()
            .map(|p| PartArg(Some(p)))
            .map_err(|_| format!("expected a part count or \"auto\", got {s:?}"))
    }
}

#[derive(Clone, Copy)]
struct TransferArg(TransferModel);

impl FromStr for TransferArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "none" {
            return Ok(TransferArg(TransferModel::None));
        }
        let Some(rest) = s.strip_prefix("simulated:") else {
            return Err(format!(
                "unknown transfer model {s:?} (expected none|simulated:BPS,LAT)"
            ));
        };
        let mut parts = rest.splitn(2, ',');
        let bps: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or("bad bytes-per-second value")?;
        let lat: f64 = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or("bad latency value")?;
        if bps <= 0.0 || lat < 0.0 {
            return Err("transfer model values out of range".into());
        }
        Ok(TransferArg(TransferModel::Simulated {
            bytes_per_second: bps,
            latency_seconds: lat,
        }))
    }
}

#[derive(Args)]
struct SchedulerArgs {
    /// Host worker threads (capped by BBTC_THREADS).
    #[arg(long)]
    hosts: Option<usize>,
    /// Fast devices to model.
    #[arg(long, default_value_t = 0)]
    devices: usize,
    /// Lanes (streams) per device.
    #[arg(long, default_value_t = 4)]
    lanes: usize,
    /// Queue cut-off index; defaults to half the queue.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Transfer model: none or simulated:BPS,LAT.
    #[arg(long, default_value = "none")]
    transfer: TransferArg,
    /// Emulated fast-lane/host speed ratio.
    #[arg(long, default_value_t = 1.0)]
    fast_speedup: f64,
}

impl SchedulerArgs {
    fn to_config(&self) -> SchedulerConfig {
        let hosts = bbtc::runspec::host_workers_with_env_cap(
            self.hosts
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        );
        SchedulerConfig {
            n_host_workers: hosts,
            n_fast_devices: self.devices,
            lanes_per_device: self.lanes,
            cutoff_index: self.cutoff,
            transfer_model: self.transfer.0,
            fast_speedup: self.fast_speedup,
        }
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Part count or "auto".
    #[arg(long, default_value = "auto")]
    p: PartArg,
    #[arg(long, default_value = "bbtc")]
    estimator: Estimator,
    #[arg(long, default_value_t = DEFAULT_DENSE_THRESHOLD)]
    dense_threshold: f64,
    #[command(flatten)]
    scheduler: SchedulerArgs,
    /// Run a sequential baseline instead: list|hash|latapy:K|brute.
    #[arg(long)]
    baseline: Option<Baseline>,
    /// Vertex cap for the brute baseline.
    #[arg(long, default_value_t = 500)]
    oracle_bound: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest graph the brute-force oracle will accept.
    #[arg(long, default_value_t = 500)]
    oracle_bound: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "auto")]
    p: PartArg,
    #[arg(long, default_value = "bbtc")]
    estimator: Estimator,
    #[arg(long, default_value_t = DEFAULT_DENSE_THRESHOLD)]
    dense_threshold: f64,
    #[command(flatten)]
    scheduler: SchedulerArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenCommand,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Erdős–Rényi G(n, q).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recursive-matrix graph over 2^scale vertices.
    Rmat {
        #[arg(long)]
        scale: u32,
        #[arg(long, default_value_t = 8)]
        edge_factor: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct PartitionArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "auto")]
    p: PartArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TasksArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "auto")]
    p: PartArg,
    #[arg(long, default_value = "bbtc")]
    estimator: Estimator,
    #[arg(long, default_value_t = DEFAULT_DENSE_THRESHOLD)]
    dense_threshold: f64,
    /// Emit CSV instead of JSON.
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit_json<T: Serialize>(value: &T, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report serialization");
    emit_text(&text, out)
}

fn emit_text(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Count(args) => {
            let format = args.input.format();
            if let Some(baseline) = args.baseline {
                let report = cmd_baseline(&args.input.input, format, baseline, args.oracle_bound)?;
                emit_json(&report, args.out.as_ref())?;
                return Ok(ExitCode::SUCCESS);
            }
            let spec = RunSpec {
                input: args.input.input.clone(),
                format,
                p: args.p.0,
                estimator: args.estimator,
                dense_threshold: args.dense_threshold,
                scheduler: args.scheduler.to_config(),
                seed: args.seed.unwrap_or(0),
            };
            let report = cmd_count(&spec)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit_json(&report, args.out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let report = cmd_verify(&args.input.input, args.input.format(), args.oracle_bound)?;
            emit_json(&report, args.out.as_ref())?;
            if report.ok {
                Ok(ExitCode::SUCCESS)
            } else {
                if let Some((a, at, b, bt)) = &report.first_mismatch {
                    eprintln!("mismatch: {a} = {at} but {b} = {bt}");
                }
                Ok(ExitCode::from(2))
            }
        }
        Command::Bench(args) => {
            let spec = RunSpec {
                input: args.input.input.clone(),
                format: args.input.format(),
                p: args.p.0,
                estimator: args.estimator,
                dense_threshold: args.dense_threshold,
                scheduler: args.scheduler.to_config(),
                seed: args.seed,
            };
            let report = cmd_bench(&spec)?;
            emit_json(&report, args.out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(args) => {
            let (kind, seed, out) = match args.kind {
                GenCommand::Gnp { n, q, seed, out } => (GenKind::Gnp { n, q }, seed, out),
                GenCommand::Rmat {
                    scale,
                    edge_factor,
                    seed,
                    out,
                } => (GenKind::Rmat { scale, edge_factor }, seed, out),
            };
            let report = cmd_gen(kind, seed, &out)?;
            emit_json(&report, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Partition(args) => {
            let report = cmd_partition(&args.input.input, args.input.format(), args.p.0)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            emit_json(&report, args.out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tasks(args) => {
            let report = cmd_tasks(
                &args.input.input,
                args.input.format(),
                args.p.0,
                args.estimator,
                args.dense_threshold,
            )?;
            if args.csv {
                emit_text(report.to_csv().trim_end(), args.out.as_ref())?;
            } else {
                emit_json(&report, args.out.as_ref())?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
