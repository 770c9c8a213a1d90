//! Command-line tool wiring the benchmarking library into one workflow:
//! hashing and known-answer verification, cycle benchmarks, memory-footprint
//! analysis, energy computation, ranking and report rendering.
//!
//! Exit codes: 0 on success, 1 when a verification (known-answer) run found
//! mismatches, 2 on usage or parse errors.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lwhbench_core::energy::{self, CaptureConfig};
use lwhbench_core::error::{Error, Result};
use lwhbench_core::hash;
use lwhbench_core::kat;
use lwhbench_core::memfoot::{self, StackUsage};
use lwhbench_core::metrics::{self, MeasurementRecord};
use lwhbench_core::profile::{self, CycleSource, DEFAULT_MESSAGE_LEN, DEFAULT_REPETITIONS};
use lwhbench_core::registry;
use lwhbench_core::report::{self, RankRow};
use lwhbench_core::table2;

/// Environment variable naming a CSV file that replaces the embedded
/// reference dataset whenever the embedded dataset would be used.
const TABLE_ENV: &str = "LWHBENCH_TABLE2";

#[derive(Parser)]
#[command(
    name = "lwhbench",
    version,
    about = "Benchmark and rank lightweight hash functions",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
    Svg,
}

/// Where ranking/report rows come from: the embedded reference dataset, an
/// explicit table CSV, or a measurements CSV with the score recomputed.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct DatasetSource {
    /// Use the embedded reference dataset (honors LWHBENCH_TABLE2)
    #[arg(long)]
    paper: bool,
    /// Load a table CSV: spec_id,cpb,ram,rom,energy_nj,erank
    #[arg(long, value_name = "FILE")]
    table: Option<PathBuf>,
    /// Load a measurements CSV: spec_id,cpb,ram,rom,energy_nj
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hash a file (or standard input) with one implemented function
    Hash {
        /// Hash function identifier (see `kat --help` for the implemented set)
        #[arg(long)]
        spec: String,
        /// Input file; standard input when omitted
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Verify an implementation against a known-answer vector file
    Kat {
        /// Hash function identifier
        #[arg(long)]
        spec: String,
        /// Known-answer file (Count/Msg/MD stanzas)
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
    },
    /// Measure cycles per byte for implemented functions on this host
    Bench {
        /// Function identifier; repeatable
        #[arg(long, conflicts_with = "all_implemented")]
        spec: Vec<String>,
        /// Benchmark every implemented function
        #[arg(long)]
        all_implemented: bool,
        /// Message length in bytes
        #[arg(long, default_value_t = DEFAULT_MESSAGE_LEN)]
        len: usize,
        /// Repetitions per function
        #[arg(long, default_value_t = DEFAULT_REPETITIONS)]
        reps: usize,
        /// Scale the monotonic clock by this frequency (Hz) instead of
        /// reading the CPU cycle counter
        #[arg(long, value_name = "HZ")]
        clk: Option<f64>,
        /// Replay a fixed comma-separated cycle sequence (pure, for testing)
        #[arg(long, value_name = "CYCLES", conflicts_with = "clk")]
        scripted: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Write output here instead of standard output
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compute RAM/ROM footprint from linker map and stack-usage files
    Mem {
        /// Linker map file
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
        /// GCC stack-usage (.su) file
        #[arg(long, value_name = "FILE")]
        su: PathBuf,
        /// Call-graph edge list ("caller callee" lines); switches the stack
        /// bound from worst single frame to deepest call-path sum
        #[arg(long, value_name = "FILE")]
        call_graph: Option<PathBuf>,
        /// Label for the output row
        #[arg(long, default_value = "target")]
        spec: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compute RMS power and energy from a power trace
    Energy {
        /// Trace file: one sample per line, or binary LWHTRC01 format
        #[arg(long, value_name = "FILE")]
        trace: PathBuf,
        /// Execution length in target clock cycles
        #[arg(long)]
        cycles: u64,
        /// Target clock frequency in Hz
        #[arg(long, value_name = "HZ")]
        clk: Option<f64>,
        /// Probe gain as a linear factor
        #[arg(long, value_name = "FACTOR")]
        gain: Option<f64>,
        /// Probe gain in decibels (20·log10 convention)
        #[arg(long, value_name = "DB", conflicts_with = "gain")]
        gain_db: Option<f64>,
        /// Shunt resistance in ohms
        #[arg(long, value_name = "OHMS")]
        shunt: Option<f64>,
        /// Supply voltage in volts
        #[arg(long, value_name = "VOLTS")]
        vsup: Option<f64>,
        /// ADC reference voltage in volts
        #[arg(long, value_name = "VOLTS")]
        adc_ref: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Rank functions by the recomputed balance score, best first
    Rank {
        #[command(flatten)]
        source: DatasetSource,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Render a table or normalized heatmap over a dataset
    Report {
        #[command(flatten)]
        source: DatasetSource,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Hash { spec, input } => cmd_hash(&spec, input.as_deref()),
        Command::Kat { spec, file } => cmd_kat(&spec, &file),
        Command::Bench {
            spec,
            all_implemented,
            len,
            reps,
            clk,
            scripted,
            format,
            out,
        } => cmd_bench(spec, all_implemented, len, reps, clk, scripted, format, out),
        Command::Mem {
            map,
            su,
            call_graph,
            spec,
            format,
            out,
        } => cmd_mem(&map, &su, call_graph.as_deref(), spec, format, out),
        Command::Energy {
            trace,
            cycles,
            clk,
            gain,
            gain_db,
            shunt,
            vsup,
            adc_ref,
            format,
            out,
        } => cmd_energy(
            &trace, cycles, clk, gain, gain_db, shunt, vsup, adc_ref, format, out,
        ),
        Command::Rank {
            source,
            format,
            out,
        } => cmd_rank(&source, format, out),
        Command::Report {
            source,
            format,
            out,
        } => cmd_report(&source, format, out),
    }
}

/// Write to `--out` when given, else standard output (content is already
/// newline-terminated).
fn emit(out: Option<&std::path::Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn implemented_list() -> String {
    registry::implemented_ids().join(", ")
}

fn cmd_hash(spec: &str, input: Option<&std::path::Path>) -> Result<ExitCode> {
    let message = match input {
        Some(path) => std::fs::read(path)?,
        None => {
            let mut buf = Vec::new();
            std::io::stdin().lock().read_to_end(&mut buf)?;
            buf
        }
    };
    let digest = hash::hash(spec, &message).map_err(|err| match err {
        Error::UnknownSpec(_) | Error::NotImplemented(_) => Error::invalid(format!(
            "{err}; implemented specs: {}",
            implemented_list()
        )),
        other => other,
    })?;
    println!("{}", digest.hex());
    Ok(ExitCode::SUCCESS)
}

fn cmd_kat(spec: &str, file: &std::path::Path) -> Result<ExitCode> {
    let text = std::fs::read_to_string(file)?;
    let report = kat::run_kat_text(spec, &text)?;
    for miss in &report.mismatches {
        println!(
            "FAIL Count={} len={} expected={} got={}",
            miss.count, miss.msg_len, miss.expected, miss.got
        );
    }
    println!(
        "{}: {}/{} vectors passed",
        report.spec_id,
        report.total - report.mismatches.len(),
        report.total
    );
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn parse_scripted(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("invalid scripted cycle count '{part}'")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    spec: Vec<String>,
    all_implemented: bool,
    len: usize,
    reps: usize,
    clk: Option<f64>,
    scripted: Option<String>,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let ids: Vec<String> = if all_implemented {
        registry::implemented_ids()
            .into_iter()
            .map(str::to_string)
            .collect()
    } else {
        spec
    };
    if ids.is_empty() {
        return Err(Error::invalid(
            "no functions selected; pass --spec <id> or --all-implemented",
        ));
    }
    let source = match (&scripted, clk) {
        (Some(text), _) => CycleSource::Scripted {
            cycles: parse_scripted(text)?,
        },
        (None, Some(frequency_hz)) => CycleSource::MonotonicClockScaled { frequency_hz },
        (None, None) => CycleSource::HostCounter {
            fallback_frequency_hz: 1e9,
        },
    };
    let mut results = Vec::with_capacity(ids.len());
    for id in &ids {
        results.push(profile::measure_cpb(id, len, reps, &source).map_err(
            |err| match err {
                Error::UnknownSpec(_) | Error::NotImplemented(_) => Error::invalid(format!(
                    "{err}; implemented specs: {}",
                    implemented_list()
                )),
                other => other,
            },
        )?);
    }
    let content = match format {
        OutputFormat::Csv => report::render_bench_csv(&results),
        OutputFormat::Json => report::render_bench_json(&results),
        OutputFormat::Svg => {
            return Err(Error::invalid("bench supports --format csv or json"))
        }
    };
    emit(out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_mem(
    map_path: &std::path::Path,
    su_path: &std::path::Path,
    call_graph: Option<&std::path::Path>,
    spec: String,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let map_text = std::fs::read_to_string(map_path)?;
    let su_text = std::fs::read_to_string(su_path)?;
    let segments = memfoot::parse_map(&map_text)?;
    let frames: StackUsage = memfoot::parse_su(&su_text)?;
    let stack = match call_graph {
        Some(path) => frames.with_call_graph(&std::fs::read_to_string(path)?)?,
        None => frames,
    };
    let foot = memfoot::footprint(&segments, &stack)
        .with_paths(map_path.display().to_string(), su_path.display().to_string());
    let entries = vec![(spec, foot)];
    let content = match format {
        OutputFormat::Csv => report::render_mem_csv(&entries),
        OutputFormat::Json => report::render_mem_json(&entries),
        OutputFormat::Svg => return Err(Error::invalid("mem supports --format csv or json")),
    };
    emit(out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_energy(
    trace: &std::path::Path,
    cycles: u64,
    clk: Option<f64>,
    gain: Option<f64>,
    gain_db: Option<f64>,
    shunt: Option<f64>,
    vsup: Option<f64>,
    adc_ref: Option<f64>,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let mut config = CaptureConfig::default();
    if let Some(v) = adc_ref {
        config.v_adc_ref = v;
    }
    if let Some(v) = gain {
        config.gain_factor = v;
    }
    if let Some(v) = shunt {
        config.r_shunt = v;
    }
    if let Some(v) = vsup {
        config.v_sup = v;
    }
    if let Some(v) = clk {
        config.f_clk = v;
    }
    if let Some(db) = gain_db {
        config = config.with_gain_db(db);
    }
    let trace = energy::load_trace(trace, config)?;
    let result = energy::energy(&trace, cycles)?;
    let content = match format {
        OutputFormat::Json => report::render_energy_json(&result),
        OutputFormat::Csv => report::render_energy_csv(&result),
        OutputFormat::Svg => {
            return Err(Error::invalid("energy supports --format json or csv"))
        }
    };
    emit(out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

/// Resolve a dataset source to rank rows.
///
/// `--paper` (or the `LWHBENCH_TABLE2` override) and `--table` keep the
/// table's own score column; `--in` measurements get the score recomputed.
fn load_rows(source: &DatasetSource) -> Result<Vec<RankRow>> {
    if let Some(path) = &source.table {
        return Ok(report::rank_rows_from_published(&table2::load_rows(path)?));
    }
    if let Some(path) = &source.input {
        let records: Vec<MeasurementRecord> =
            metrics::parse_measurements_csv(&std::fs::read_to_string(path)?)?;
        return report::rank_rows_recomputed(&records);
    }
    // --paper
    let rows = match std::env::var_os(TABLE_ENV) {
        Some(path) => table2::load_rows(PathBuf::from(path))?,
        None => table2::embedded_rows()?,
    };
    Ok(report::rank_rows_from_published(&rows))
}

fn cmd_rank(
    source: &DatasetSource,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    // Ranking always recomputes the balance score from the four inputs.
    let published = load_rows(source)?;
    let records: Vec<MeasurementRecord> = published
        .iter()
        .map(|row| {
            MeasurementRecord::new(
                row.spec_id.clone(),
                row.cpb,
                row.ram_bytes,
                row.rom_bytes,
                row.energy_nj,
                metrics::MeasurementSource::External,
            )
        })
        .collect();
    let mut rows = report::rank_rows_recomputed(&records)?;
    report::sort_by_erank_desc(&mut rows);
    let content = match format {
        OutputFormat::Csv => report::render_table_csv(&rows),
        OutputFormat::Json => report::render_table_json(&rows),
        OutputFormat::Svg => return Err(Error::invalid("rank supports --format csv or json")),
    };
    emit(out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_report(
    source: &DatasetSource,
    format: OutputFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let rows = load_rows(source)?;
    let heatmap = report::heatmap_from_rows(&rows)?;
    let content = match format {
        OutputFormat::Csv => report::render_report_csv(&heatmap),
        OutputFormat::Json => report::render_report_json(&heatmap),
        OutputFormat::Svg => report::render_heatmap_svg(&heatmap),
    };
    emit(out.as_deref(), &content)?;
    Ok(ExitCode::SUCCESS)
}
