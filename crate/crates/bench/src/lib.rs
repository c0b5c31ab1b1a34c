//! Benchmark harness for `viewcp-core`: repeated timed runs of a model in
//! one or more engine modes, aggregated into one report row per
//! (benchmark, mode), written as CSV or as an aligned text table.

use std::io::{self, Read, Write};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use viewcp_core::models::{ModelSpec, SlabInstance};
use viewcp_core::{EngineMode, RunStats};

pub const CSV_HEADER: &str =
    "bench,mode,runs,mean_cpu_ms,mean_wall_ms,sd_cpu_ms,sd_wall_ms,peak_bytes,propagations,nodes,failures,solutions";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot build {bench}: {source}")]
    Model {
        bench: String,
        #[source]
        source: viewcp_core::Error,
    },
    #[error("{bench} ({mode}): run {run} reported different counts than run 1")]
    CountMismatch { bench: String, mode: EngineMode, run: usize },
    #[error("runs must be at least 1")]
    NoRuns,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Stable identifier of an instance, used as the `bench` column.
pub fn bench_id(spec: &ModelSpec) -> String {
    match spec {
        ModelSpec::MagicSeries { n } => format!("magicseries-{n}"),
        ModelSpec::Langford { n } => format!("langford-{n}"),
        ModelSpec::Knapsack { weights, .. } => format!("knapsack-{}", weights.len()),
        ModelSpec::Bibd { v, k, lambda } => format!("bibd-{v}-{k}-{lambda}"),
        ModelSpec::Slab(inst) if *inst == SlabInstance::mini() => "slab-mini".to_string(),
        ModelSpec::Slab(inst) => format!("slab-{}", inst.weights.len()),
    }
}

/// Process CPU time in milliseconds.
pub fn cpu_time_ms() -> f64 {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    // SAFETY: `ts` is a valid, writable timespec.
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_PROCESS_CPUTIME_ID, &mut ts) };
    if rc != 0 {
        return 0.0;
    }
    ts.tv_sec as f64 * 1e3 + ts.tv_nsec as f64 / 1e6
}

/// One build-and-search of a model. Times cover model construction and
/// search.
pub fn run_once(spec: &ModelSpec, mode: EngineMode, limit: Option<u64>) -> Result<RunStats, BenchError> {
    let cpu0 = cpu_time_ms();
    let wall0 = Instant::now();
    let mut model = spec.build(mode).map_err(|source| BenchError::Model {
        bench: bench_id(spec),
        source,
    })?;
    if limit.is_some() {
        model.limit = limit;
    }
    let mut stats = model.solve().stats;
    stats.wall_ms = wall0.elapsed().as_secs_f64() * 1e3;
    stats.cpu_ms = (cpu_time_ms() - cpu0).max(0.0);
    Ok(stats)
}

fn same_counts(a: &RunStats, b: &RunStats) -> bool {
    (a.propagations, a.nodes, a.failures, a.solutions, a.peak_bytes)
        == (b.propagations, b.nodes, b.failures, b.solutions, b.peak_bytes)
}

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Aggregated results of `runs` fresh runs of one instance in one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub bench: String,
    pub mode: EngineMode,
    pub runs: usize,
    pub mean_cpu_ms: f64,
    pub mean_wall_ms: f64,
    pub sd_cpu_ms: f64,
    pub sd_wall_ms: f64,
    pub peak_bytes: u64,
    pub propagations: u64,
    pub nodes: u64,
    pub failures: u64,
    pub solutions: u64,
}

/// Runs `spec` `runs` times in `mode`. `limit` overrides the benchmark's
/// default solution limit. Fails if any run disagrees with the first on a
/// count column.
pub fn run_bench(spec: &ModelSpec, mode: EngineMode, runs: usize, limit: Option<u64>) -> Result<BenchReport, BenchError> {
    if runs == 0 {
        return Err(BenchError::NoRuns);
    }
    let mut samples = Vec::with_capacity(runs);
    for run in 0..runs {
        let stats = run_once(spec, mode, limit)?;
        if let Some(first) = samples.first() {
            if !same_counts(first, &stats) {
                return Err(BenchError::CountMismatch {
                    bench: bench_id(spec),
                    mode,
                    run: run + 1,
                });
            }
        }
        samples.push(stats);
    }
    let cpu: Vec<f64> = samples.iter().map(|s| s.cpu_ms).collect();
    let wall: Vec<f64> = samples.iter().map(|s| s.wall_ms).collect();
    let (mean_cpu_ms, sd_cpu_ms) = mean_sd(&cpu);
    let (mean_wall_ms, sd_wall_ms) = mean_sd(&wall);
    let s = &samples[0];
    Ok(BenchReport {
        bench: bench_id(spec),
        mode,
        runs,
        mean_cpu_ms,
        mean_wall_ms,
        sd_cpu_ms,
        sd_wall_ms,
        peak_bytes: s.peak_bytes,
        propagations: s.propagations,
        nodes: s.nodes,
        failures: s.failures,
        solutions: s.solutions,
    })
}

/// A report as written to and read from CSV. Timing columns are kept as
/// the formatted strings so a round trip is exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub bench: String,
    pub mode: String,
    pub runs: usize,
    pub mean_cpu_ms: String,
    pub mean_wall_ms: String,
    pub sd_cpu_ms: String,
    pub sd_wall_ms: String,
    pub peak_bytes: u64,
    pub propagations: u64,
    pub nodes: u64,
    pub failures: u64,
    pub solutions: u64,
}

impl From<&BenchReport> for CsvRow {
    fn from(r: &BenchReport) -> Self {
        CsvRow {
            bench: r.bench.clone(),
            mode: r.mode.as_str().to_string(),
            runs: r.runs,
            mean_cpu_ms: format!("{:.1}", r.mean_cpu_ms),
            mean_wall_ms: format!("{:.1}", r.mean_wall_ms),
            sd_cpu_ms: format!("{:.1}", r.sd_cpu_ms),
            sd_wall_ms: format!("{:.1}", r.sd_wall_ms),
            peak_bytes: r.peak_bytes,
            propagations: r.propagations,
            nodes: r.nodes,
            failures: r.failures,
            solutions: r.solutions,
        }
    }
}

pub fn write_csv<W: Write>(reports: &[BenchReport], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    if reports.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in reports {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CsvRow>, BenchError> {
    let mut rd = csv::Reader::from_reader(input);
    let rows = rd.deserialize().collect::<Result<Vec<CsvRow>, _>>()?;
    Ok(rows)
}

/// The same columns as the CSV, padded into aligned columns. Text columns
/// are left-aligned, numbers right-aligned.
pub fn write_text<W: Write>(reports: &[BenchReport], mut out: W) -> io::Result<()> {
    let header: Vec<&str> = CSV_HEADER.split(',').collect();
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let c = CsvRow::from(r);
            vec![
                c.bench,
                c.mode,
                c.runs.to_string(),
                c.mean_cpu_ms,
                c.mean_wall_ms,
                c.sd_cpu_ms,
                c.sd_wall_ms,
                c.peak_bytes.to_string(),
                c.propagations.to_string(),
                c.nodes.to_string(),
                c.failures.to_string(),
                c.solutions.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[&str]| -> String {
        cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i < 2 {
                    format!("{c:<w$}", w = widths[i])
                } else {
                    format!("{c:>w$}", w = widths[i])
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    };
    writeln!(out, "{}", line(&header).trim_end())?;
    for r in &rows {
        let cells: Vec<&str> = r.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&cells).trim_end())?;
    }
    Ok(())
}
