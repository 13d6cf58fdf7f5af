//! `twostage`: two-sample location tests on the command line, the Monte
//! Carlo study behind them, and a corpus normality-screening pipeline.
//!
//! Exit codes: 0 success, 1 usage/configuration error, 2 data error
//! (degenerate or unsupported input), 3 I/O error.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use twostage_core::corpus;
use twostage_core::mcsim::{report_render, run_table1, ReportFormat, SimConfig};
use twostage_core::stattests::{
    advise_with, combined_test, pooled_residuals, shapiro_wilk, t_test_two_sample,
    wilcoxon_rank_sum, AdviceMode, AdviceReport, AdvisorConfig, TestOutcome,
};
use twostage_core::{DistributionSpec, Error, Probability, Sample};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "twostage",
    version,
    about = "Two-sample t/Wilcoxon/combined testing, Monte Carlo power analysis, \
             and Shapiro-Wilk corpus screening"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate type-I error and power of the T/W/C tests over a
    /// distribution-by-size grid.
    Simulate(SimulateArgs),
    /// Screen a corpus of CSV variables with the Shapiro-Wilk test.
    Corpus(CorpusArgs),
    /// Run a two-sample test on data files (one numeric value per line).
    Test(TestArgs),
    /// Recommend a parametric or nonparametric test for two data files.
    Advise(AdviseArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Monte Carlo replications per grid cell
    #[arg(long, default_value_t = 20_000)]
    reps: usize,
    /// Master seed; every report is a pure function of the full flag set
    #[arg(long, env = "TWOSTAGE_SEED", default_value_t = 42)]
    seed: u64,
    /// Rejection level of the two-sample tests
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Rejection level of the normality gate inside the combined test
    #[arg(long, default_value_t = 0.05)]
    normality_alpha: f64,
    /// Location shift under the alternative, in true-SD units
    #[arg(long, default_value_t = 0.5)]
    shift: f64,
    /// Comma-separated per-group sample sizes
    #[arg(long, value_delimiter = ',', default_value = "5,10,25,50,100")]
    sizes: Vec<usize>,
    /// Comma-separated distribution names (default: all six)
    #[arg(long, value_delimiter = ',')]
    dists: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Md)]
    format: OutputFormat,
    /// Write the report here instead of stdout (written atomically)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core); the report does not depend on it
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Md,
    Csv,
    Json,
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus manifest (JSON); see the repository README for the schema
    #[arg(long, required_unless_present = "synthetic")]
    manifest: Option<PathBuf>,
    /// Generate a self-contained synthetic corpus in this directory and
    /// screen it (no manifest needed)
    #[arg(long, conflicts_with = "manifest")]
    synthetic: Option<PathBuf>,
    /// Seed for the synthetic corpus generator
    #[arg(long, env = "TWOSTAGE_SEED", default_value_t = 42)]
    seed: u64,
    /// Normality rejection level
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Write per-variable records as CSV (variable_id,n,w,p)
    #[arg(long)]
    records: Option<PathBuf>,
    /// Write the p-value vs sample-size scatter plot as SVG
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print rejection proportions per sample-size bin
    #[arg(long)]
    summary: bool,
}

#[derive(Args)]
struct TestArgs {
    /// First sample, one numeric value per line
    #[arg(long)]
    x: PathBuf,
    /// Second sample, one numeric value per line
    #[arg(long)]
    y: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Rejection level of the normality gate (combined test)
    #[arg(long, default_value_t = 0.05)]
    normality_alpha: f64,
    /// Print machine-readable JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    T,
    Wilcoxon,
    Combined,
    Shapiro,
    All,
}

#[derive(Args)]
struct AdviseArgs {
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Guidelines)]
    mode: Mode,
    /// Guidelines mode: per-group |skewness| at or below this is symmetric
    #[arg(long, default_value_t = 0.5)]
    symmetric_threshold: f64,
    /// Guidelines mode: per-group excess kurtosis at or below this is
    /// short-tailed
    #[arg(long, default_value_t = 1.0)]
    tail_threshold: f64,
    /// Guidelines mode: observations beyond this many IQRs from the
    /// quartiles count as outliers
    #[arg(long, default_value_t = 3.0)]
    outlier_k: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Guidelines,
    Footnote8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Corpus(args) => cmd_corpus(args),
        Command::Test(args) => cmd_test(args),
        Command::Advise(args) => cmd_advise(args),
    };
    ExitCode::from(code)
}

fn fail(code: u8, message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    code
}

fn probability_flag(name: &str, value: f64) -> Result<Probability, String> {
    if !(value > 0.0 && value < 1.0) {
        return Err(format!("--{name} must lie strictly inside (0, 1), got {value}"));
    }
    Probability::new(value).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// simulate

fn cmd_simulate(args: SimulateArgs) -> u8 {
    let alpha = match probability_flag("alpha", args.alpha) {
        Ok(p) => p,
        Err(m) => return fail(EXIT_USAGE, m),
    };
    let normality_alpha = match probability_flag("normality-alpha", args.normality_alpha) {
        Ok(p) => p,
        Err(m) => return fail(EXIT_USAGE, m),
    };
    let distributions = match &args.dists {
        None => DistributionSpec::canonical_six(),
        Some(names) => {
            let mut specs = Vec::with_capacity(names.len());
            for name in names {
                match DistributionSpec::from_name(name) {
                    Ok(spec) => specs.push(spec),
                    Err(e) => return fail(EXIT_USAGE, e),
                }
            }
            specs
        }
    };
    let config = SimConfig {
        distributions,
        sizes_per_group: args.sizes.clone(),
        replications: args.reps,
        shift_in_sd: args.shift,
        alpha,
        normality_alpha,
        master_seed: args.seed,
    };
    if let Err(e) = config.validate() {
        return fail(EXIT_USAGE, e);
    }

    let report = {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build();
        let pool = match pool {
            Ok(pool) => pool,
            Err(e) => return fail(EXIT_USAGE, format!("cannot build thread pool: {e}")),
        };
        match pool.install(|| run_table1(&config)) {
            Ok(report) => report,
            Err(e @ Error::Usage(_)) => return fail(EXIT_USAGE, e),
            Err(e) => return fail(EXIT_DATA, e),
        }
    };
    eprintln!(
        "simulated {} cells x {} replications in {:.1?}",
        report.cells.len(),
        report.config.replications,
        report.elapsed
    );
    let format = match args.format {
        OutputFormat::Md => ReportFormat::Markdown,
        OutputFormat::Csv => ReportFormat::Csv,
        OutputFormat::Json => ReportFormat::Json,
    };
    emit(args.out.as_deref(), &report_render(&report, format))
}

// ---------------------------------------------------------------------------
// corpus

fn cmd_corpus(args: CorpusArgs) -> u8 {
    let alpha = match probability_flag("alpha", args.alpha) {
        Ok(p) => p,
        Err(m) => return fail(EXIT_USAGE, m),
    };
    let manifest_path = match (&args.manifest, &args.synthetic) {
        (Some(path), _) => path.clone(),
        (None, Some(dir)) => {
            match corpus::write_synthetic_corpus(
                dir,
                &[10, 25, 50, 100, 250, 1000],
                50,
                args.seed,
            ) {
                Ok(path) => {
                    eprintln!("wrote synthetic corpus under {}", dir.display());
                    path
                }
                Err(e @ Error::Io(_)) => return fail(EXIT_IO, e),
                Err(e) => return fail(EXIT_USAGE, e),
            }
        }
        (None, None) => unreachable!("clap enforces one of --manifest/--synthetic"),
    };
    let manifest = match corpus::load_manifest(&manifest_path) {
        Ok(m) => m,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let base = manifest_path
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .to_path_buf();
    let extraction = corpus::extract_variables(&manifest, &base);
    for err in &extraction.entry_errors {
        eprintln!("warning: {err}");
    }
    for warning in &extraction.warnings {
        eprintln!("warning: {warning}");
    }
    let (records, summary, screen_warnings) = corpus::screen_corpus(&extraction.variables, alpha);
    for warning in &screen_warnings {
        eprintln!("warning: {warning}");
    }

    if let Some(path) = &args.records {
        if let Err(e) = write_atomic(path, &corpus::records_csv(&records)) {
            return fail(EXIT_IO, e);
        }
        eprintln!("wrote {} records to {}", records.len(), path.display());
    }
    if let Some(path) = &args.svg {
        match corpus::scatter_svg(&records, path, alpha) {
            Ok(()) => eprintln!("wrote scatter plot to {}", path.display()),
            Err(e @ Error::Usage(_)) => return fail(EXIT_USAGE, e),
            Err(e) => return fail(EXIT_IO, e),
        }
    }
    if args.summary {
        println!(
            "variables screened: {} (skipped: {})",
            summary.total_variables, summary.skipped
        );
        for bin in &summary.bins {
            println!(
                "{:<16} count {:>5}   rejected {:>5}   proportion {:.3}",
                bin.label,
                bin.count,
                bin.rejected,
                bin.proportion.value()
            );
        }
        println!(
            "n > 250: {} variables, {} passing normality at alpha = {}",
            summary.count_n_gt_250,
            summary.count_n_gt_250_passing,
            alpha.value()
        );
        let aggregate = |label: &str, pred: &dyn Fn(usize) -> bool| {
            if let Some(p) = corpus::rejection_proportion(&records, alpha, pred) {
                println!("aggregate: {:.1}% rejected for {label}", 100.0 * p);
            }
        };
        aggregate("n <= 30", &|n| n <= 30);
        aggregate("n > 50", &|n| n > 50);
    } else if args.records.is_none() && args.svg.is_none() {
        println!("screened {} variables", summary.total_variables);
    }
    EXIT_OK
}

// ---------------------------------------------------------------------------
// test

fn cmd_test(args: TestArgs) -> u8 {
    let normality_alpha = match probability_flag("normality-alpha", args.normality_alpha) {
        Ok(p) => p,
        Err(m) => return fail(EXIT_USAGE, m),
    };
    let x = match read_data_file(&args.x) {
        Ok(s) => s,
        Err(m) => return fail(EXIT_DATA, m),
    };
    let y = match read_data_file(&args.y) {
        Ok(s) => s,
        Err(m) => return fail(EXIT_DATA, m),
    };

    let run = |method: Method| -> Result<TestOutcome, Error> {
        match method {
            Method::T => t_test_two_sample(&x, &y),
            Method::Wilcoxon => wilcoxon_rank_sum(&x, &y),
            Method::Shapiro => shapiro_wilk(&pooled_residuals(&x, &y)),
            Method::Combined => combined_test(&x, &y, normality_alpha),
            Method::All => unreachable!(),
        }
    };
    let methods: Vec<Method> = match args.method {
        Method::All => vec![Method::T, Method::Wilcoxon, Method::Shapiro, Method::Combined],
        m => vec![m],
    };

    let mut outcomes = Vec::with_capacity(methods.len());
    for method in methods {
        match run(method) {
            Ok(outcome) => outcomes.push(outcome),
            Err(e) => return fail(EXIT_DATA, e),
        }
    }

    if args.json {
        let value = if outcomes.len() == 1 {
            serde_json::to_value(&outcomes[0]).expect("outcome serializes")
        } else {
            let mut map = serde_json::Map::new();
            for outcome in &outcomes {
                map.insert(
                    method_key(outcome),
                    serde_json::to_value(outcome).expect("outcome serializes"),
                );
            }
            serde_json::Value::Object(map)
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        for (i, outcome) in outcomes.iter().enumerate() {
            if i > 0 {
                println!();
            }
            print_outcome(outcome);
        }
    }
    EXIT_OK
}

fn method_key(outcome: &TestOutcome) -> String {
    serde_json::to_value(outcome.method)
        .expect("method serializes")
        .as_str()
        .expect("method is a string")
        .to_string()
}

fn print_outcome(outcome: &TestOutcome) {
    println!("method: {}", method_key(outcome));
    if outcome.n2 > 0 {
        println!("n1: {}  n2: {}", outcome.n1, outcome.n2);
    } else {
        println!("n: {}", outcome.n1);
    }
    println!("statistic: {}", outcome.statistic);
    if let Some(df) = outcome.df {
        println!("df: {df}");
    }
    println!("p-value: {}", outcome.p_value);
    println!("exact: {}", outcome.exact);
    if let Some(branch) = outcome.branch_taken {
        let branch = serde_json::to_value(branch).expect("branch serializes");
        println!("branch: {}", branch.as_str().expect("string"));
    }
}

// ---------------------------------------------------------------------------
// advise

fn cmd_advise(args: AdviseArgs) -> u8 {
    let x = match read_data_file(&args.x) {
        Ok(s) => s,
        Err(m) => return fail(EXIT_DATA, m),
    };
    let y = match read_data_file(&args.y) {
        Ok(s) => s,
        Err(m) => return fail(EXIT_DATA, m),
    };
    let mode = match args.mode {
        Mode::Guidelines => AdviceMode::Guidelines,
        Mode::Footnote8 => AdviceMode::Footnote8,
    };
    let config = AdvisorConfig {
        symmetric_threshold: args.symmetric_threshold,
        tail_threshold: args.tail_threshold,
        outlier_k: args.outlier_k,
    };
    let report = match advise_with(&x, &y, mode, &config) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_DATA, e),
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
        return EXIT_OK;
    }
    print_advice(&report, x.len(), y.len());
    EXIT_OK
}

fn print_advice(report: &AdviceReport, n1: usize, n2: usize) {
    let mode = serde_json::to_value(report.mode).expect("serializes");
    let recommendation = serde_json::to_value(report.recommendation).expect("serializes");
    println!("mode: {}", mode.as_str().expect("string"));
    println!("n1: {n1}  n2: {n2}  (smaller group: {})", report.n_min);
    if !report.skewness_per_group.is_empty() {
        let rendered: Vec<String> = report
            .skewness_per_group
            .iter()
            .map(|s| format!("{s:.4}"))
            .collect();
        println!("skewness per group: {}", rendered.join(", "));
        println!("outliers: {}", report.outlier_count);
    }
    println!("recommendation: {}", recommendation.as_str().expect("string"));
    println!("rule: {}", report.rule_fired);
    for note in &report.notes {
        println!("note: {note}");
    }
}

// ---------------------------------------------------------------------------
// shared helpers

/// Reads a newline-delimited numeric data file.
fn read_data_file(path: &Path) -> Result<Sample, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut values = Vec::new();
    for (line_number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| {
            format!(
                "{} line {}: '{line}' is not a number",
                path.display(),
                line_number + 1
            )
        })?;
        values.push(value);
    }
    Sample::new(values).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes output via a temporary file in the target directory followed by a
/// rename, so readers never observe a partial report.
fn write_atomic(path: &Path, content: &str) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    std::io::Write::write_all(&mut tmp, content.as_bytes())?;
    tmp.persist(path)
        .map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, content: &str) -> u8 {
    match out {
        None => {
            print!("{content}");
            EXIT_OK
        }
        Some(path) => match write_atomic(path, content) {
            Ok(()) => {
                eprintln!("wrote report to {}", path.display());
                EXIT_OK
            }
            Err(e) => fail(EXIT_IO, e),
        },
    }
}
