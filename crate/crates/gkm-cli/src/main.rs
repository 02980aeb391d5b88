//! Command-line front end: load moment graphs from files (or stdin with
//! `-`), run the validations and computations, and emit plain whitespace
//! tables that are byte-stable across runs.
//!
//! Exit codes: 0 on success, 1 on validation/computation failure, 2 on usage
//! errors (clap's default).

use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use gkm::builders;
use gkm::cohomology;
use gkm::integral;
use gkm::io::{read_graph, read_polytope, write_graph};
use gkm::morse::Direction;
use gkm::poly::{parse_rational, LinearForm, Rational};
use gkm::MomentGraph;

#[derive(Parser)]
#[command(
    name = "gkm",
    version,
    about = "Equivariant cohomology of Hamiltonian T-spaces from moment graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DirectionArg {
    /// Direction as comma-separated integers, e.g. `1,2`; a generic one is
    /// chosen deterministically when omitted
    #[arg(long, value_name = "XI", allow_hyphen_values = true)]
    xi: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of a graph file
    Validate { file: String },
    /// Betti numbers read off the Morse indices
    Betti {
        file: String,
        #[command(flatten)]
        xi: DirectionArg,
    },
    /// Kernel dimensions next to the Morse prediction, one row per degree
    Hilbert {
        file: String,
        #[arg(long)]
        max_degree: u32,
        #[command(flatten)]
        xi: DirectionArg,
    },
    /// Basis of the degree-d congruence kernel
    Basis {
        file: String,
        #[arg(long)]
        degree: u32,
    },
    /// Flow-up generators and the degreewise freeness check
    Generators {
        file: String,
        #[arg(long)]
        max_degree: u32,
        #[command(flatten)]
        xi: DirectionArg,
    },
    /// Integer divisibility gap, one `vertex gap` line per vertex
    IntGap {
        file: String,
        #[command(flatten)]
        xi: DirectionArg,
    },
    /// Construct a standard graph and print its graph file
    Build {
        #[command(subcommand)]
        what: BuildCommand,
    },
}

#[derive(Subcommand)]
enum BuildCommand {
    /// Two-sphere with the given weight
    Sphere {
        /// Weight vector, comma-separated integers
        #[arg(long, value_name = "W", allow_hyphen_values = true)]
        weight: String,
        /// South-pole moment image, comma-separated rationals (default: origin)
        #[arg(long, value_name = "POINT", allow_hyphen_values = true)]
        base: Option<String>,
        /// Positive rational stretch of the moment segment (default: 1)
        #[arg(long, value_name = "C", default_value = "1")]
        scale: String,
    },
    /// Complex projective space of the given dimension
    Cpn {
        #[arg(long)]
        dim: usize,
    },
    /// Product of two graphs under the product torus
    Product { file1: String, file2: String },
    /// Multiply every weight by an integer factor
    Scale {
        file: String,
        #[arg(long)]
        factor: u32,
    },
    /// Graph of a polytope given by its vertices and edges
    Delzant { file: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Invalid(listing)) => {
            print!("{listing}");
            ExitCode::from(1)
        }
        Err(CliError::Message(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    /// Validation findings: printed to stdout, exit 1.
    Invalid(String),
    /// Everything else: printed to stderr, exit 1.
    Message(String),
}

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Message(e.to_string())
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let graph = load_graph(&file)?;
            let report = graph.validate();
            let mut out = report.to_string();
            if report.is_valid() {
                out.push_str("valid\n");
                Ok(out)
            } else {
                Err(CliError::Invalid(out))
            }
        }
        Command::Betti { file, xi } => {
            let graph = load_graph(&file)?;
            let xi = resolve_direction(&graph, &xi)?;
            let betti = cohomology::betti_numbers(&graph, &xi)?;
            let parts: Vec<String> = betti.iter().map(|b| b.to_string()).collect();
            Ok(format!("{}\n", parts.join(" ")))
        }
        Command::Hilbert {
            file,
            max_degree,
            xi,
        } => {
            let graph = Arc::new(load_graph(&file)?);
            let xi = resolve_direction(&graph, &xi)?;
            let table = cohomology::hilbert_table(&graph, &xi, max_degree)?;
            Ok(table.to_string())
        }
        Command::Basis { file, degree } => {
            let graph = Arc::new(load_graph(&file)?);
            let basis = cohomology::kernel_basis(&graph, degree)?;
            let mut out = format!("dim {}\n", basis.dimension());
            for (i, class) in basis.classes.iter().enumerate() {
                for (id, p) in class.values() {
                    writeln!(out, "{i} {id} {p}").expect("string write");
                }
            }
            Ok(out)
        }
        Command::Generators {
            file,
            max_degree,
            xi,
        } => {
            let graph = Arc::new(load_graph(&file)?);
            let xi = resolve_direction(&graph, &xi)?;
            let gens = cohomology::module_generators(&graph, &xi, max_degree)?;
            let mut out = String::new();
            for (v, class) in graph.vertices().iter().zip(&gens.generators) {
                writeln!(out, "generator {} degree {}", v.id, class.degree())
                    .expect("string write");
                out.push_str(&class.to_string());
            }
            for row in &gens.freeness {
                writeln!(
                    out,
                    "freeness {} {} {} {} {}",
                    row.degree,
                    row.products,
                    row.rank,
                    row.kernel_dimension,
                    if row.is_free() { "ok" } else { "FAIL" }
                )
                .expect("string write");
            }
            Ok(out)
        }
        Command::IntGap { file, xi } => {
            let graph = load_graph(&file)?;
            let xi = resolve_direction(&graph, &xi)?;
            let report = integral::gap_report(&graph, &xi)?;
            let mut out = String::new();
            for (id, gap) in report {
                writeln!(out, "{id} {gap}").expect("string write");
            }
            Ok(out)
        }
        Command::Build { what } => build(what),
    }
}

fn build(what: BuildCommand) -> Result<String, CliError> {
    let graph = match what {
        BuildCommand::Sphere {
            weight,
            base,
            scale,
        } => {
            let weight = LinearForm::new(parse_int_list(&weight)?)?;
            let base = match base {
                Some(text) => parse_rational_list(&text)?,
                None => vec![Rational::from_integer(0.into()); weight.num_vars()],
            };
            if base.len() != weight.num_vars() {
                return Err("base point and weight must have the same length".into());
            }
            let scale = parse_rational(&scale)?;
            if scale <= Rational::from_integer(0.into()) {
                return Err("scale must be positive".into());
            }
            builders::sphere(&weight, &base, &scale)
        }
        BuildCommand::Cpn { dim } => {
            if dim == 0 {
                return Err("dimension must be positive".into());
            }
            builders::projective_space(dim)
        }
        BuildCommand::Product { file1, file2 } => {
            let g1 = load_graph(&file1)?;
            let g2 = load_graph(&file2)?;
            builders::product(&g1, &g2)
        }
        BuildCommand::Scale { file, factor } => {
            let g = load_graph(&file)?;
            builders::scale_action(&g, factor)?
        }
        BuildCommand::Delzant { file } => {
            let text = read_input(&file)?;
            let (points, edges) = read_polytope(&text)?;
            let built = builders::from_delzant(&points, &edges)?;
            for w in &built.warnings {
                eprintln!("warning: {w}");
            }
            built.graph
        }
    };
    Ok(write_graph(&graph))
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Message(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Message(format!("{path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<MomentGraph, CliError> {
    let text = read_input(path)?;
    Ok(read_graph(&text)?)
}

fn resolve_direction(graph: &MomentGraph, arg: &DirectionArg) -> Result<Direction, CliError> {
    match &arg.xi {
        Some(text) => {
            let xi = Direction::new(parse_int_list(text)?);
            graph.check_generic(&xi)?;
            Ok(xi)
        }
        None => Ok(graph.generic_direction()),
    }
}

fn parse_int_list(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Message(format!("bad integer `{part}`")))
        })
        .collect()
}

fn parse_rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|part| Ok(parse_rational(part.trim())?))
        .collect()
}
