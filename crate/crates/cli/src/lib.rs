//! Command-line front end. [`run`] does all the work so that tests can drive
//! it with in-memory streams.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use sunada::catalog;
use sunada::covering::{covering_report, validate_polygon, CoveringReport, PolygonValidation};
use sunada::gassmann::is_sunada_triple;
use sunada::schreier::{schreier_graph, CosetTable, SchreierGraph};
use sunada::search::{find_sunada_pairs, SearchConfig, DEFAULT_MAX_SUBGROUPS};
use sunada::specfile::{GroupSpecFile, LoadedSpec};
use sunada::spectra::{adjacency_matrix, eigenvalues_symmetric, SpectraError, DEFAULT_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_SUNADA: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sunada",
    about = "Sunada triples, Schreier graphs and isospectral covers"
)]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check whether (G, U, V) is a Sunada triple
    Verify {
        /// Group spec file, or - for standard input
        file: String,
        #[arg(short = 'U', long = "U")]
        u: String,
        #[arg(short = 'V', long = "V")]
        v: String,
    },
    /// Smoothness, cone points, Euler characteristic and genus of G/U
    Report {
        file: String,
        #[arg(short = 'U', long = "U")]
        u: String,
        /// Include the polygon relator check
        #[arg(long)]
        polygon: bool,
    },
    /// Schreier coset graph of U
    Graph {
        file: String,
        #[arg(short = 'U', long = "U")]
        u: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        /// Comma-separated element names to use as arc labels (default: generators)
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
    },
    /// Symmetrized adjacency spectrum of the Schreier graph of U
    Spectrum {
        file: String,
        #[arg(short = 'U', long = "U")]
        u: String,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
    },
    /// Search for Sunada pairs of a given subgroup order (JSON lines)
    Search {
        file: String,
        #[arg(long)]
        order: usize,
        /// Require both quotients to be smooth over the file's polygon
        #[arg(long)]
        smooth: bool,
        /// Report every pair instead of one per simultaneous-conjugacy class
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_SUBGROUPS)]
        max_subgroups: usize,
    },
    /// Print a bundled construction as a group spec file
    Catalog {
        /// genus2, genus3 or orbifold-h
        name: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli.command, stdin) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &text).map_err(input),
                None => stdout.write_all(text.as_bytes()).map_err(input),
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

fn numeric(e: SpectraError) -> CliError {
    match e {
        SpectraError::InvalidTolerance(_) => CliError::Input(e.to_string()),
        _ => CliError::Numeric(e.to_string()),
    }
}

fn load(file: &str, stdin: &mut dyn Read) -> Result<LoadedSpec, CliError> {
    let text = if file == "-" {
        let mut buf = String::new();
        stdin.read_to_string(&mut buf).map_err(input)?;
        buf
    } else {
        fs::read_to_string(file).map_err(|e| CliError::Input(format!("{file}: {e}")))?
    };
    GroupSpecFile::from_json(&text)
        .and_then(|spec| spec.load())
        .map_err(input)
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn labelled_graph(
    loaded: &LoadedSpec,
    u: &str,
    labels: &[String],
) -> Result<SchreierGraph, CliError> {
    let sub = loaded.subgroup(u).map_err(input)?;
    let labels: Vec<(String, usize)> = if labels.is_empty() {
        loaded.generator_labels().to_vec()
    } else {
        labels
            .iter()
            .map(|name| Ok((name.clone(), loaded.element(name).map_err(input)?)))
            .collect::<Result<_, CliError>>()?
    };
    let table = CosetTable::new(&loaded.group, sub);
    Ok(schreier_graph(&loaded.group, &table, &labels))
}

#[derive(serde::Serialize)]
struct ReportWithPolygon<'a> {
    #[serde(flatten)]
    report: &'a CoveringReport,
    polygon: &'a PolygonValidation,
}

fn execute(command: &Command, stdin: &mut dyn Read) -> Result<(String, i32), CliError> {
    match command {
        Command::Verify { file, u, v } => {
            let loaded = load(file, stdin)?;
            let su = loaded.subgroup(u).map_err(input)?;
            let sv = loaded.subgroup(v).map_err(input)?;
            let report = is_sunada_triple(&loaded.group, su, sv).map_err(input)?;
            let code = if report.is_sunada_triple {
                EXIT_OK
            } else {
                EXIT_NOT_SUNADA
            };
            Ok((pretty(&report), code))
        }
        Command::Report { file, u, polygon } => {
            let loaded = load(file, stdin)?;
            let sub = loaded.subgroup(u).map_err(input)?;
            let poly = loaded
                .polygon
                .as_ref()
                .ok_or_else(|| CliError::Input(format!("{file}: no polygon given")))?;
            let report = covering_report(&loaded.group, sub, poly).map_err(input)?;
            let text = if *polygon {
                let validation = validate_polygon(&loaded.group, poly).map_err(input)?;
                pretty(&ReportWithPolygon {
                    report: &report,
                    polygon: &validation,
                })
            } else {
                pretty(&report)
            };
            Ok((text, EXIT_OK))
        }
        Command::Graph {
            file,
            u,
            format,
            labels,
        } => {
            let loaded = load(file, stdin)?;
            let graph = labelled_graph(&loaded, u, labels)?;
            let text = match format {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Json => pretty(&graph.to_json()),
            };
            Ok((text, EXIT_OK))
        }
        Command::Spectrum {
            file,
            u,
            tol,
            labels,
        } => {
            let loaded = load(file, stdin)?;
            let graph = labelled_graph(&loaded, u, labels)?;
            let spectrum =
                eigenvalues_symmetric(&adjacency_matrix(&graph), *tol).map_err(numeric)?;
            Ok((pretty(&spectrum), EXIT_OK))
        }
        Command::Search {
            file,
            order,
            smooth,
            all,
            max_subgroups,
        } => {
            let loaded = load(file, stdin)?;
            let mut cfg = SearchConfig::new(*order);
            cfg.dedupe = !all;
            cfg.max_subgroups = *max_subgroups;
            if *smooth {
                let poly = loaded
                    .polygon
                    .clone()
                    .ok_or_else(|| CliError::Input(format!("{file}: --smooth needs a polygon")))?;
                cfg.avoid = Some(poly);
            }
            let pairs = find_sunada_pairs(&loaded.group, &cfg).map_err(input)?;
            let mut text = String::new();
            for p in &pairs {
                text.push_str(&p.to_json_line(&loaded.group));
                text.push('\n');
            }
            Ok((text, EXIT_OK))
        }
        Command::Catalog { name } => {
            let entry = catalog::build(name).map_err(input)?;
            let mut text = entry.spec.to_json_pretty();
            text.push('\n');
            Ok((text, EXIT_OK))
        }
    }
}
