use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use viewcp_bench::{run_bench, write_csv, write_text, BenchError, BenchReport};
use viewcp_core::models::{benchmark_suite, knapsack_instance, ModelSpec, SlabInstance};
use viewcp_core::EngineMode;

#[derive(Parser)]
#[command(name = "viewcp", version, about = "Run propagation benchmarks with and without views")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one benchmark instance.
    Bench {
        #[arg(value_enum)]
        name: BenchName,
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the whole benchmark suite.
    Suite {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchName {
    Magicseries,
    Langford,
    Knapsack,
    Bibd,
    Slab,
}

#[derive(Args)]
struct InstanceArgs {
    /// Size for magicseries and langford, item count for knapsack.
    #[arg(long)]
    n: Option<usize>,
    /// Knapsack weights, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
    /// Knapsack right-hand side.
    #[arg(long, allow_hyphen_values = true)]
    target: Option<i64>,
    /// Knapsack upper bound of every item (lower bound 0).
    #[arg(long, default_value_t = 3)]
    max: i64,
    #[arg(long, default_value_t = 7)]
    v: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    /// Slab instance; only `mini` is built in.
    #[arg(long, default_value = "mini")]
    instance: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Noview,
    Varview,
    Domview,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Csv,
    Text,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    mode: ModeArg,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    #[arg(long, value_enum, default_value_t = Emit::Csv)]
    emit: Emit,
    /// Stop after this many solutions instead of the benchmark default.
    #[arg(long)]
    limit: Option<u64>,
}

fn modes(m: ModeArg) -> Vec<EngineMode> {
    match m {
        ModeArg::Noview => vec![EngineMode::NoView],
        ModeArg::Varview => vec![EngineMode::VariableView],
        ModeArg::Domview => vec![EngineMode::DomainView],
        ModeArg::All => EngineMode::ALL.to_vec(),
    }
}

fn spec_for(name: BenchName, a: &InstanceArgs) -> Result<ModelSpec, String> {
    Ok(match name {
        BenchName::Magicseries => ModelSpec::MagicSeries { n: a.n.unwrap_or(6) },
        BenchName::Langford => ModelSpec::Langford { n: a.n.unwrap_or(7) },
        BenchName::Knapsack => match (&a.weights, a.target) {
            (Some(weights), Some(target)) => ModelSpec::Knapsack {
                weights: weights.clone(),
                target,
                ranges: vec![(0, a.max); weights.len()],
            },
            (None, None) => knapsack_instance(a.n.unwrap_or(4)),
            _ => return Err("--weights and --target go together".into()),
        },
        BenchName::Bibd => ModelSpec::Bibd {
            v: a.v,
            k: a.k,
            lambda: a.lambda,
        },
        BenchName::Slab => match a.instance.as_str() {
            "mini" => ModelSpec::Slab(SlabInstance::mini()),
            other => return Err(format!("unknown slab instance `{other}` (available: mini)")),
        },
    })
}

fn run(specs: &[ModelSpec], args: &RunArgs) -> Result<(), BenchError> {
    let mut reports: Vec<BenchReport> = Vec::new();
    for spec in specs {
        for mode in modes(args.mode) {
            reports.push(run_bench(spec, mode, args.runs, args.limit)?);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.emit {
        Emit::Csv => write_csv(&reports, &mut out)?,
        Emit::Text => write_text(&reports, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bench { name, instance, run: args } => match spec_for(*name, instance) {
            Ok(spec) => run(&[spec], args),
            Err(msg) => {
                eprintln!("viewcp: {msg}");
                return ExitCode::from(2);
            }
        },
        Command::Suite { run: args } => run(&benchmark_suite(), args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("viewcp: {e}");
            ExitCode::FAILURE
        }
    }
}
