//! Command-line front end for the bag-of-subgraphs refinement testers.
//!
//! Verdicts go to stdout (`DISTINGUISHED@t` / `POSSIBLY_ISOMORPHIC@t`, or a
//! JSON report with `--json`); diagnostics go to stderr. Exit codes are
//! reserved for operational failure so pipelines can consume verdicts:
//! 0 on success (the verdict is payload, not an exit code), 1 for usage
//! errors, 2 for unreadable or unparseable graph inputs, 3 when `reproduce`
//! finds a failing check.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use bagwl::bag::DssOptions;
use bagwl::graph::format_edge_list;
use bagwl::iso::are_isomorphic;
use bagwl::par::configure_jobs;
use bagwl::sample::{sampled_policy_test, BagEngine, SampleConfig};
use bagwl::tester::{power_matrix, search_separations, SearchError, TestOptions, TesterConfig};
use bagwl::Graph;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use bagwl_cli::input::{generate, graph_from_spec, InputError};
use bagwl_cli::report::{
    MatrixReport, MatrixRow, OracleReport, RunReport, SearchReport, TraceReport, VoteSummary,
    SCHEMA,
};
use bagwl_cli::suite;

// ============================================================================
// Argument grammar
// ============================================================================

#[derive(Parser)]
#[command(
    name = "bagwl",
    version,
    about = "Pairwise non-isomorphism testers over bags of subgraphs",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated graph as edge-list text (e.g. `gen csl 12 3`).
    Gen {
        /// Family name followed by its parameters: cycle N, path N, star K,
        /// complete N, csl N K, cycles N1 N2 ..., 2c3, rooks4, shrikhande.
        #[arg(num_args = 1.., required = true)]
        family: Vec<String>,
    },
    /// Run one tester on a graph pair and print the verdict.
    Test {
        /// Left graph: `gen:<family>:<params>` or an edge-list file path.
        left: String,
        /// Right graph, same forms.
        right: String,
        /// Tester spec: wl, fwl2, ds:<policy>[:fwl2], dss:<policy>.
        #[arg(long, default_value = "wl")]
        tester: String,
        /// Round cap (default: run to convergence).
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Print a JSON report instead of the verdict line.
        #[arg(long)]
        json: bool,
        /// Write a round-by-round JSON trace to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Subsample both bags to this fraction and take a majority vote
        /// (bag testers only).
        #[arg(long)]
        sample: Option<f64>,
        /// Number of sampled draws to vote over (odd).
        #[arg(long, default_value_t = 5)]
        votes: usize,
        /// Seed for the sampled draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap the worker pool at this many threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run several testers over every pair of several graphs.
    Matrix {
        /// Two or more graphs (generator specs or file paths).
        #[arg(num_args = 2.., required = true)]
        graphs: Vec<String>,
        /// Comma-separated tester specs.
        #[arg(long, value_delimiter = ',', required = true)]
        testers: Vec<String>,
        /// Round cap (default: run to convergence).
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Print a JSON report instead of the aligned table.
        #[arg(long)]
        json: bool,
        /// Cap the worker pool at this many threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// List pairs of n-node isomorphism classes that one tester
    /// distinguishes and another does not.
    Search {
        /// Number of nodes (at most 7).
        nodes: usize,
        /// The tester expected to distinguish more.
        stronger: String,
        /// The tester expected to distinguish less.
        weaker: String,
        /// Round cap (default: run to convergence).
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Cap the worker pool at this many threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Exact isomorphism check on a graph pair (at most 64 nodes).
    Oracle {
        left: String,
        right: String,
        /// Print a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite and print one PASS/FAIL line per check.
    Reproduce {
        /// Run only checks whose name contains this substring.
        #[arg(long)]
        only: Option<String>,
        /// Cap the worker pool at this many threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

// ============================================================================
// Errors and exit codes
// ============================================================================

enum CliError {
    /// Bad invocation: unknown tester, invalid sampling setup, domain limits.
    Usage(String),
    /// A graph argument could not be read or parsed.
    Input(InputError),
    /// An output file could not be written.
    Write { path: String, message: String },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) | CliError::Write { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Write { path, message } => write!(f, "cannot write {path}: {message}"),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

// ============================================================================
// Entry point
// ============================================================================

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen { family } => {
            let parts: Vec<&str> = family.iter().map(String::as_str).collect();
            let g = generate(&parts)?;
            print!("{}", format_edge_list(&g));
            Ok(ExitCode::SUCCESS)
        }
        Command::Test { left, right, tester, max_rounds, json, trace, sample, votes, seed, jobs } => {
            if let Some(jobs) = jobs {
                configure_jobs(jobs);
            }
            cmd_test(&left, &right, &tester, max_rounds, json, trace, sample, votes, seed)
        }
        Command::Matrix { graphs, testers, max_rounds, json, jobs } => {
            if let Some(jobs) = jobs {
                configure_jobs(jobs);
            }
            cmd_matrix(&graphs, &testers, max_rounds, json)
        }
        Command::Search { nodes, stronger, weaker, max_rounds, json, jobs } => {
            if let Some(jobs) = jobs {
                configure_jobs(jobs);
            }
            cmd_search(nodes, &stronger, &weaker, max_rounds, json)
        }
        Command::Oracle { left, right, json } => cmd_oracle(&left, &right, json),
        Command::Reproduce { only, jobs } => {
            if let Some(jobs) = jobs {
                configure_jobs(jobs);
            }
            cmd_reproduce(only.as_deref())
        }
    }
}

// ============================================================================
// test
// ============================================================================

#[allow(clippy::too_many_arguments)]
fn cmd_test(
    left: &str,
    right: &str,
    tester_spec: &str,
    max_rounds: Option<usize>,
    json: bool,
    trace: Option<PathBuf>,
    sample: Option<f64>,
    votes: usize,
    seed: u64,
) -> Result<ExitCode, CliError> {
    let g1 = graph_from_spec(left)?;
    let g2 = graph_from_spec(right)?;
    let tester = TesterConfig::parse(tester_spec).map_err(usage)?;
    let opts = TestOptions { max_rounds, ..TestOptions::default() };

    let mut report = RunReport {
        schema: SCHEMA,
        tester: tester.to_string(),
        left: left.to_string(),
        right: right.to_string(),
        verdict: bagwl::Verdict::PossiblyIsomorphic { converged_at: 0 },
        rounds: 0,
        wall_time_ms: 0.0,
        trace_path: None,
        votes: None,
    };

    let start = Instant::now();
    match sample {
        None => {
            if let Some(path) = &trace {
                let (verdict, rounds) = tester.run_traced(&g1, &g2, &opts).map_err(usage)?;
                let trace_report = TraceReport {
                    schema: SCHEMA,
                    tester: tester.to_string(),
                    left: left.to_string(),
                    right: right.to_string(),
                    verdict,
                    rounds,
                };
                let text = serde_json::to_string_pretty(&trace_report)
                    .expect("trace reports serialize");
                fs::write(path, text).map_err(|e| CliError::Write {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                report.verdict = verdict;
                report.trace_path = Some(path.display().to_string());
            } else {
                report.verdict = tester.run(&g1, &g2, &opts).map_err(usage)?;
            }
        }
        Some(ratio) => {
            if trace.is_some() {
                return Err(CliError::Usage(
                    "--trace applies to deterministic runs; drop --sample".to_string(),
                ));
            }
            let (policy, engine) = match &tester {
                TesterConfig::Ds { policy, base } => (policy, BagEngine::Independent(*base)),
                TesterConfig::Dss { policy } => {
                    (policy, BagEngine::Joint(DssOptions::default()))
                }
                TesterConfig::Wl | TesterConfig::Fwl2 => {
                    return Err(CliError::Usage(format!(
                        "--sample applies to bag testers (ds:*/dss:*), not {tester}"
                    )))
                }
            };
            let cfg = SampleConfig::new(ratio, votes, seed).map_err(usage)?;
            let (majority, tally) =
                sampled_policy_test(&g1, &g2, policy, engine, &cfg, max_rounds).map_err(usage)?;
            report.verdict = majority;
            report.votes = Some(VoteSummary {
                draws: tally.verdicts.len(),
                distinguished: tally.distinguished(),
            });
        }
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    report.rounds = report.verdict.round();

    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        println!("{}", report.verdict);
    }
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// matrix
// ============================================================================

fn cmd_matrix(
    graph_specs: &[String],
    tester_specs: &[String],
    max_rounds: Option<usize>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let graphs: Vec<Graph> =
        graph_specs.iter().map(|s| graph_from_spec(s)).collect::<Result<_, _>>()?;
    let testers: Vec<TesterConfig> = tester_specs
        .iter()
        .map(|s| TesterConfig::parse(s))
        .collect::<Result<_, _>>()
        .map_err(usage)?;
    let opts = TestOptions { max_rounds, ..TestOptions::default() };
    let entries = power_matrix(&testers, &graphs, &opts).map_err(usage)?;
    let report = MatrixReport {
        schema: SCHEMA,
        testers: tester_specs.to_vec(),
        graphs: graph_specs.to_vec(),
        rows: entries
            .into_iter()
            .map(|e| MatrixRow { left: e.left, right: e.right, verdicts: e.verdicts })
            .collect(),
    };

    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
        return Ok(ExitCode::SUCCESS);
    }
    println!("# testers: {}", tester_specs.join(", "));
    let id_width = graph_specs.iter().map(String::len).max().unwrap_or(0);
    let mut column_widths = vec![0usize; testers.len()];
    let rendered: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|row| {
            row.verdicts
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let text = v.to_string();
                    column_widths[i] = column_widths[i].max(text.len());
                    text
                })
                .collect()
        })
        .collect();
    for (row, cells) in report.rows.iter().zip(&rendered) {
        let mut line = format!(
            "{:<id_width$}  {:<id_width$}",
            graph_specs[row.left], graph_specs[row.right]
        );
        for (i, cell) in cells.iter().enumerate() {
            line.push_str(&format!("  {:<width$}", cell, width = column_widths[i]));
        }
        println!("{}", line.trim_end());
    }
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// search
// ============================================================================

fn edges_text(g: &Graph) -> String {
    let mut out = String::new();
    for &(u, v) in g.edges() {
        out.push_str(&format!("({u} {v})"));
    }
    if out.is_empty() {
        out.push_str("(no edges)");
    }
    out
}

fn cmd_search(
    nodes: usize,
    stronger_spec: &str,
    weaker_spec: &str,
    max_rounds: Option<usize>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let stronger = TesterConfig::parse(stronger_spec).map_err(usage)?;
    let weaker = TesterConfig::parse(weaker_spec).map_err(usage)?;
    let opts = TestOptions { max_rounds, ..TestOptions::default() };
    let result = search_separations(nodes, &stronger, &weaker, &opts).map_err(|e| match e {
        SearchError::Enumeration(e) => usage(e),
        SearchError::Policy(e) => usage(e),
    })?;
    let report = SearchReport {
        schema: SCHEMA,
        nodes,
        stronger: stronger_spec.to_string(),
        weaker: weaker_spec.to_string(),
        classes: result.classes,
        pairs: result.pairs,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
        return Ok(ExitCode::SUCCESS);
    }
    println!("classes: {}", report.classes);
    println!("separations: {}", report.pairs.len());
    if !report.pairs.is_empty() {
        let graphs = bagwl::iso::enumerate_graphs(nodes).expect("search already enumerated");
        for &(i, j) in &report.pairs {
            println!("{i} {j}  {} | {}", edges_text(&graphs[i]), edges_text(&graphs[j]));
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// oracle
// ============================================================================

fn cmd_oracle(left: &str, right: &str, json: bool) -> Result<ExitCode, CliError> {
    let g1 = graph_from_spec(left)?;
    let g2 = graph_from_spec(right)?;
    let result = are_isomorphic(&g1, &g2).map_err(usage)?;
    let report = OracleReport {
        schema: SCHEMA,
        left: left.to_string(),
        right: right.to_string(),
        isomorphic: result.isomorphic,
        witness: result.witness,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
        return Ok(ExitCode::SUCCESS);
    }
    if report.isomorphic {
        println!("ISOMORPHIC");
        if let Some(witness) = &report.witness {
            let images: Vec<String> = witness.iter().map(u32::to_string).collect();
            println!("witness: {}", images.join(" "));
        }
    } else {
        println!("NOT_ISOMORPHIC");
    }
    Ok(ExitCode::SUCCESS)
}

// ============================================================================
// reproduce
// ============================================================================

fn cmd_reproduce(only: Option<&str>) -> Result<ExitCode, CliError> {
    let checks = suite::all_checks();
    let selected: Vec<_> = checks
        .into_iter()
        .filter(|c| only.is_none_or(|needle| c.name.contains(needle)))
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!(
            "no check name contains {:?}",
            only.unwrap_or_default()
        )));
    }
    let total = selected.len();
    let mut passed = 0usize;
    let start = Instant::now();
    for check in selected {
        let report = check.run();
        if report.passed {
            passed += 1;
        }
        println!("{}", report.format());
    }
    println!(
        "reproduce: {passed}/{total} checks passed in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if passed == total {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}
