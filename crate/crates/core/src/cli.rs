//! The `autgraph` command line.
//!
//! Exit codes: 0 success, 1 a report was refuted (or a suite entry timed
//! out), 2 unreadable input, 3 violated invariant, 4 failed precondition.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::auteng::automorphism_group;
use crate::families::FamilySpec;
use crate::graph::Graph;
use crate::verify::suite::{default_suite, parse_config, run_suite, SuiteOptions};
use crate::verify::{family_checks, is_stable, Conclusion, Criterion, VerifyReport};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "autgraph", version, about = "Graph automorphism groups and bipartite double checks")]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family graph such as `johnson:5,2` and write it out.
    Family {
        spec: FamilySpec,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Order and generators of the automorphism group.
    Aut {
        /// Graph file (text or JSON) or a family spec.
        input: String,
    },
    /// Stability verdict for the bipartite double.
    Stability { input: String },
    /// Every applicable check for one family instance.
    Verify { spec: FamilySpec },
    /// Run a suite config; the built-in one when no file is given.
    Suite {
        config: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Per-entry time limit.
        #[arg(long)]
        timeout_secs: Option<u64>,
        /// Cross-check group orders by backtracking up to this many vertices.
        #[arg(long)]
        brute_cap: Option<usize>,
        /// Record wall-clock times in the reports.
        #[arg(long)]
        timings: bool,
    },
}

/// Parses the process arguments, runs, and prints errors to stderr.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs one command, writing the main output to `out`. Returns the exit
/// code for the non-error outcomes (0 or 1).
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Error> {
    let text = match &cli.command {
        Command::Family { spec, output } => {
            let g = spec.build()?;
            let encoded = match cli.format {
                Format::Text => g.to_text(),
                Format::Json => g.to_json(),
            };
            match output {
                Some(path) => {
                    write_file(path, &encoded)?;
                    family_legend(&g)
                }
                None => encoded,
            }
        }
        Command::Aut { input } => {
            let group = automorphism_group(&load_graph(input)?);
            match cli.format {
                Format::Json => json(&group),
                Format::Text => {
                    let mut s = format!("order {}\n", group.order());
                    for g in group.generators() {
                        let _ = writeln!(s, "{g}");
                    }
                    s
                }
            }
        }
        Command::Stability { input } => {
            let v = is_stable(&load_graph(input)?)?;
            match cli.format {
                Format::Json => json(&v),
                Format::Text => {
                    let criterion = match &v.criterion {
                        Criterion::Holds => "holds".to_string(),
                        Criterion::Inconclusive { reason, .. } => format!("inconclusive ({reason})"),
                    };
                    let a0 = v.a0.map_or_else(|| "-".to_string(), |a| a.to_string());
                    format!(
                        "criterion {criterion}\na0 {a0}\naut_order {}\ndouble_aut_order {}\nstable {}\n",
                        v.aut_order, v.double_aut_order, v.stable
                    )
                }
            }
        }
        Command::Verify { spec } => {
            let reports = family_checks(spec)?;
            let code = u8::from(reports.iter().any(VerifyReport::is_refuted));
            write_out(out, &render_reports(&reports, cli.format))?;
            return Ok(code);
        }
        Command::Suite { config, output, timeout_secs, brute_cap, timings } => {
            let entries = match config {
                Some(path) => parse_config(&read_file(path)?)?,
                None => default_suite(),
            };
            let opts = SuiteOptions {
                timeout: timeout_secs.map(Duration::from_secs),
                brute_cap: *brute_cap,
                timings: *timings,
            };
            let outcome = run_suite(&entries, &opts)?;
            let rendered = render_reports(&outcome.reports, cli.format);
            match output {
                Some(path) => write_file(path, &json(&outcome.reports))?,
                None => write_out(out, &rendered)?,
            }
            if output.is_some() {
                write_out(out, &suite_summary(&outcome.reports))?;
            }
            return Ok(u8::from(!outcome.passed()));
        }
    };
    write_out(out, &text)?;
    Ok(0)
}

/// A path that exists is read as a graph file; anything else is parsed as
/// a family spec.
pub fn load_graph(input: &str) -> Result<Graph, Error> {
    if Path::new(input).exists() {
        return Ok(Graph::parse_any(&read_file(Path::new(input))?)?);
    }
    Ok(input.parse::<FamilySpec>()?.build()?)
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), Error> {
    out.write_all(s.as_bytes())
        .map_err(|source| Error::Io { path: "<stdout>".into(), source })
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes") + "\n"
}

fn family_legend(g: &Graph) -> String {
    let mut s = format!("{} vertices, {} edges\n", g.n(), g.edge_count());
    if let Some(labels) = g.labels() {
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(s, "{i} {l}");
        }
    }
    s
}

fn render_reports(reports: &[VerifyReport], format: Format) -> String {
    match format {
        Format::Json => json(&reports),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let (status, detail) = match &r.conclusion {
                    Conclusion::Verified => ("verified", String::new()),
                    Conclusion::Refuted { witness } => ("REFUTED", format!("  {witness}")),
                    Conclusion::Skipped { reason } => ("skipped", format!("  {reason}")),
                };
                let _ = writeln!(s, "{status:<9} {:<24} {}{detail}", r.theorem_id, r.instance);
            }
            s + &suite_summary(reports)
        }
    }
}

fn suite_summary(reports: &[VerifyReport]) -> String {
    let count = |f: fn(&Conclusion) -> bool| reports.iter().filter(|r| f(&r.conclusion)).count();
    format!(
        "{} reports: {} verified, {} refuted, {} skipped\n",
        reports.len(),
        count(|c| matches!(c, Conclusion::Verified)),
        count(|c| matches!(c, Conclusion::Refuted { .. })),
        count(|c| matches!(c, Conclusion::Skipped { .. })),
    )
}
