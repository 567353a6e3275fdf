mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sepprof::enumerate::SubgraphMode;
use sepprof::profile::DEFAULT_BUDGET;

use report::Report;

#[derive(Parser)]
#[command(
    name = "sepprof",
    version,
    about = "Exact separation, treewidth and layout profiles of small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Measure {
    Tw,
    Cut,
    Sn,
    Bsep,
    Cw,
    Pw,
    Sumcut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProfileMeasure {
    Tw,
    Cut,
    Bsep,
    Cw,
    Pw,
    Sumcut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Connected,
    AllInduced,
}

impl From<Mode> for SubgraphMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Connected => SubgraphMode::Connected,
            Mode::AllInduced => SubgraphMode::AllInduced,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(clap::Args, Clone, Copy, Debug)]
pub struct EnumerationArgs {
    /// Largest subgraph size.
    #[arg(long)]
    pub r: usize,
    #[arg(long, value_enum, default_value = "connected")]
    pub mode: Mode,
    /// Maximum number of subgraphs evaluated; beyond it values are lower bounds.
    #[arg(long, env = "SEPPROF_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for subgraph evaluation.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of a graph with its certificate.
    Compute {
        #[arg(value_enum)]
        invariant: Measure,
        graph: PathBuf,
        /// Diagnostic for bsep: drop the requirement that A and B cover every vertex.
        #[arg(long)]
        no_completion: bool,
    },
    /// Profile of an invariant over subgraphs with at most r vertices.
    Profile {
        #[arg(value_enum)]
        invariant: ProfileMeasure,
        graph: PathBuf,
        #[command(flatten)]
        enumeration: EnumerationArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Check identities and inequalities on a concrete input.
    Verify {
        #[command(subcommand)]
        suite: Verify,
    },
    /// Generate graphs from a specification.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Check a certificate file.
    Validate {
        #[command(subcommand)]
        what: Validate,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// sep(k) - 1 <= tw(k) <= 15 sep(k) for every k <= r.
    Sandwich {
        graph: PathBuf,
        #[command(flatten)]
        enumeration: EnumerationArgs,
    },
    /// Treewidth profile of the host equals the maximum of the piece profiles.
    TreegradedEq {
        grading: PathBuf,
        #[command(flatten)]
        enumeration: EnumerationArgs,
    },
    /// Treewidth assembled from the pieces equals the exact treewidth of the host.
    Join { grading: PathBuf },
    /// Turn a half-cutset into a balanced separator of the same size.
    Conversion {
        graph: PathBuf,
        /// Comma-separated vertices; defaults to a minimum half-cutset.
        #[arg(long, value_delimiter = ',')]
        cutset: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Ball of a free-product Cayley graph, from `{"g": group, "h": group}`.
    /// Without `"h"` the ball of the single group is generated.
    Cayley {
        spec: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Output directory for graph.json and grading.json.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = sepprof::cayley::DEFAULT_BALL_CAP)]
        cap: usize,
    },
    /// Glue template copies along a tree into a tree-graded graph.
    Compose {
        spec: PathBuf,
        /// Output file for the grading.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Validate {
    /// Tree decomposition in PACE .td or JSON form against a graph.
    Td {
        graph: PathBuf,
        decomposition: PathBuf,
    },
    /// Tree-grading file.
    Grading {
        grading: PathBuf,
        /// Check the loop condition by enumerating up to this many cycles instead of blocks.
        #[arg(long)]
        cycles: Option<usize>,
    },
}

/// Writes pretty JSON to stdout, ignoring a closed pipe.
fn emit(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("json serializes");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::iter::once("sepprof".to_string())
        .chain(std::env::args().skip(1))
        .collect();
    let cli = Cli::parse();
    let mut report = Report::new(argv.clone());
    let outcome = match cli.command {
        Command::Compute {
            invariant,
            graph,
            no_completion,
        } => commands::compute(&mut report, invariant, &graph, no_completion),
        Command::Profile {
            invariant,
            graph,
            enumeration,
            format,
        } => match commands::profile(&mut report, invariant, &graph, &enumeration) {
            Ok(csv) if format == OutputFormat::Csv => {
                let _ = std::io::stdout().lock().write_all(csv.as_bytes());
                return ExitCode::SUCCESS;
            }
            other => other.map(|_| ()),
        },
        Command::Verify { suite } => match suite {
            Verify::Sandwich { graph, enumeration } => {
                commands::sandwich(&mut report, &graph, &enumeration)
            }
            Verify::TreegradedEq {
                grading,
                enumeration,
            } => commands::treegraded_eq(&mut report, &grading, &enumeration),
            Verify::Join { grading } => commands::join(&mut report, &grading),
            Verify::Conversion { graph, cutset } => {
                commands::conversion(&mut report, &graph, cutset)
            }
        },
        Command::Gen { what } => match what {
            Gen::Cayley {
                spec,
                radius,
                output,
                cap,
            } => commands::gen_cayley(&mut report, &spec, radius, output.as_deref(), cap),
            Gen::Compose { spec, output } => {
                commands::gen_compose(&mut report, &spec, output.as_deref())
            }
        },
        Command::Validate { what } => match what {
            Validate::Td {
                graph,
                decomposition,
            } => commands::validate_td(&mut report, &graph, &decomposition),
            Validate::Grading { grading, cycles } => {
                commands::validate_grading(&mut report, &grading, cycles)
            }
        },
    };
    match outcome {
        Ok(()) => {
            emit(&report.to_json());
            ExitCode::from(report.exit_code())
        }
        Err(failure) => {
            emit(&failure.to_json(&argv));
            eprintln!("sepprof: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
