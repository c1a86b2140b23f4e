//! `rgg`: sample, analyze, classify, and sweep random graph products.
//!
//! All output is machine-readable (edge lists, JSON, CSV). Exit codes:
//! 0 success, 1 internal failure, 2 usage or config error, 3 oracle-check
//! mismatch.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rgg_core::classifier::{classify, VertexGroupSpec};
use rgg_core::detectors::analyze;
use rgg_core::edgelist;
use rgg_core::gnp::GnpParams;
use rgg_core::graph::Graph;
use rgg_core::harness::{run_sweep, ExperimentConfig};
use rgg_core::moments;
use rgg_core::oracle::{closed_form_checks, CheckRow};

#[derive(Parser)]
#[command(name = "rgg", version, about = "Random graph products: detectors, moments, sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one G(n, p) graph and print it as an edge list.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        /// Trial index within the seed's stream.
        #[arg(long, default_value_t = 0)]
        trial: u64,
        #[arg(long, value_enum, default_value_t = SampleFormat::Edgelist)]
        format: SampleFormat,
    },
    /// Run every detector on a graph and print the JSON report.
    Analyze {
        /// Edge-list file, or `-` for stdin.
        #[arg(long)]
        input: String,
    },
    /// Classify the graph product defined by a graph and vertex-group spec.
    Classify {
        /// Edge-list file, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// `coxeter`, `artin`, or a comma-separated list of z / c<order> / fg.
        #[arg(long)]
        spec: String,
    },
    /// Print every closed-form moment at (n, p) as JSON.
    Moments {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
    },
    /// Validate the closed forms against the exhaustive enumeration oracle.
    OracleCheck {
        /// Vertex count; omit to run the default n in {4, 5} grid.
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability; omit to run the default p in {0.2, 0.5, 0.8} grid.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Run a Monte Carlo sweep from a config file.
    Sweep {
        #[arg(long)]
        config: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// Write rows here instead of stdout.
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleFormat {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

enum CliError {
    Usage(String),
    Internal(String),
    OracleMismatch,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
            CliError::OracleMismatch => 3,
        }
    }
}

fn usage<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Usage(err.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Internal(msg) => eprintln!("internal error: {msg}"),
                CliError::OracleMismatch => eprintln!("oracle-check: closed forms disagree"),
            }
            ExitCode::from(err.exit_code())
        }
    }
}

/// RGG_THREADS caps sweep/oracle parallelism; 0 or unset means automatic.
fn configure_threads() {
    if let Ok(value) = std::env::var("RGG_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sample {
            n,
            p,
            seed,
            trial,
            format,
        } => {
            let params = GnpParams::new(n, p, seed).map_err(usage)?;
            let g = params.sample(trial);
            match format {
                SampleFormat::Edgelist => print!("{}", edgelist::write(&g)),
                SampleFormat::Json => {
                    #[derive(Serialize)]
                    struct SampleOut {
                        n: usize,
                        edge_count: usize,
                        edges: Vec<(usize, usize)>,
                    }
                    print_json(&SampleOut {
                        n: g.n(),
                        edge_count: g.edge_count(),
                        edges: g.edges(),
                    })?;
                }
            }
            Ok(())
        }
        Command::Analyze { input } => {
            let g = read_graph(&input)?;
            print_json(&analyze(&g))
        }
        Command::Classify { input, spec } => {
            let g = read_graph(&input)?;
            let spec = VertexGroupSpec::parse(g.n(), &spec).map_err(usage)?;
            let verdict = classify(&g, &spec).map_err(usage)?;
            print_json(&verdict)
        }
        Command::Moments { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(usage(format!("p must be in [0, 1], got {p}")));
            }
            print_json(&moments::moments_report(n, p))
        }
        Command::OracleCheck { n, p, format } => oracle_check(n, p, format),
        Command::Sweep {
            config,
            format,
            output,
        } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| usage(format!("cannot read config {config:?}: {e}")))?;
            let config = ExperimentConfig::parse(&text).map_err(usage)?;
            let summary = run_sweep(&config);
            let rendered = match format {
                TableFormat::Csv => summary.to_csv(),
                TableFormat::Json => summary.to_json(),
            };
            match output {
                None => print!("{rendered}"),
                Some(path) => fs::write(&path, rendered)
                    .map_err(|e| CliError::Internal(format!("writing {path:?}: {e}")))?,
            }
            Ok(())
        }
    }
}

fn read_graph(input: &str) -> Result<Graph, CliError> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(input).map_err(|e| usage(format!("cannot read {input:?}: {e}")))?
    };
    edgelist::parse(&text).map_err(usage)
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(format!("serialization: {e}")))?;
    println!("{text}");
    Ok(())
}

fn oracle_check(
    n: Option<usize>,
    p: Option<f64>,
    format: TableFormat,
) -> Result<(), CliError> {
    let ns = match n {
        Some(n) => vec![n],
        None => vec![4, 5],
    };
    let ps = match p {
        Some(p) => vec![p],
        None => vec![0.2, 0.5, 0.8],
    };

    let mut rows: Vec<CheckRow> = Vec::new();
    for &n in &ns {
        for &p in &ps {
            rows.extend(closed_form_checks(n, p).map_err(usage)?);
        }
    }

    match format {
        TableFormat::Csv => {
            println!("formula,n,p,closed_form,oracle,abs_error,tolerance,pass");
            for row in &rows {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    row.formula,
                    row.n,
                    row.p,
                    row.closed_form,
                    row.oracle,
                    row.abs_error,
                    row.tolerance,
                    row.pass
                );
            }
        }
        TableFormat::Json => print_json(&rows)?,
    }

    // per-formula worst case on stderr, leaving stdout purely tabular
    let mut max_by_formula: Vec<(&str, f64)> = Vec::new();
    for row in &rows {
        match max_by_formula.iter_mut().find(|(name, _)| *name == row.formula) {
            Some((_, max)) => *max = max.max(row.abs_error),
            None => max_by_formula.push((row.formula, row.abs_error)),
        }
    }
    for (formula, max) in &max_by_formula {
        eprintln!("{formula}: max |closed - oracle| = {max:.3e}");
    }

    if rows.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(CliError::OracleMismatch)
    }
}
