use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use glcs_core::format::format_label;
use glcs_core::oracle::{gen_random_graph, oracle_infinite_probe, oracle_seq_ic, Verdict};
use glcs_core::{
    atomize, condense, lcs_dag, parse_graph, seq_ic_lcs_cyclic, write_atomic, write_condensed, write_graph,
    AtomicGraph, ExtLen, GraphError, SeqIcDag,
};

/// Longest common subsequences of labeled graphs.
#[derive(Parser)]
#[command(name = "glcs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// LCS length of two acyclic graphs.
    Lcs { g1: PathBuf, g2: PathBuf },
    /// Longest common subsequence of G1 and G2 containing a path label of G3.
    SeqIc {
        g1: PathBuf,
        g2: PathBuf,
        g3: PathBuf,
        /// Also print one optimal string (acyclic targets only).
        #[arg(long)]
        witness: bool,
    },
    /// Brute-force reference answers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Print the single-character expansion of a graph.
    Atomize { g: PathBuf },
    /// Print the strongly connected component condensation of a graph.
    Condense { g: PathBuf },
    /// Print a random graph.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        alphabet: usize,
        /// Only generate acyclic graphs.
        #[arg(long)]
        dag: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Enumerate path strings; cyclic targets are unrolled up to N times.
    SeqIc {
        g1: PathBuf,
        g2: PathBuf,
        g3: PathBuf,
        #[arg(long, value_name = "N")]
        max_unroll: Option<usize>,
    },
}

const DEFAULT_UNROLL: usize = 4;

enum Failure {
    Input(String),
    Structure(String),
    Capacity(String),
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge(_) => Failure::Capacity(e.to_string()),
            GraphError::CyclicGraph | GraphError::CyclicConstraint | GraphError::EmptyGraph => {
                Failure::Structure(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<AtomicGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let g = parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(atomize(&g))
}

fn render(value: ExtLen) -> String {
    match value {
        ExtLen::NegInf => "no-solution".into(),
        ExtLen::Finite(n) => n.to_string(),
        ExtLen::PosInf => "inf".into(),
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Lcs { g1, g2 } => Ok(format!("{}\n", lcs_dag(&load(&g1)?, &load(&g2)?)?)),
        Command::SeqIc { g1, g2, g3, witness } => {
            let (g1, g2, g3) = (load(&g1)?, load(&g2)?, load(&g3)?);
            if g1.is_acyclic() && g2.is_acyclic() {
                if !g3.is_acyclic() {
                    return Err(GraphError::CyclicConstraint.into());
                }
                let solved = SeqIcDag::compute(&g1, &g2, &g3)?;
                let line = match (witness, solved.witness()) {
                    (true, Some(w)) => format!("{} {}", render(solved.length()), format_label(&w)),
                    _ => render(solved.length()),
                };
                Ok(line + "\n")
            } else {
                if witness {
                    eprintln!("glcs: no witness for cyclic targets");
                }
                Ok(render(seq_ic_lcs_cyclic(&g1, &g2, &g3)?) + "\n")
            }
        }
        Command::Oracle(OracleCommand::SeqIc { g1, g2, g3, max_unroll }) => {
            let (g1, g2, g3) = (load(&g1)?, load(&g2)?, load(&g3)?);
            if max_unroll.is_none() && g1.is_acyclic() && g2.is_acyclic() {
                return Ok(render(oracle_seq_ic(&g1, &g2, &g3)?) + "\n");
            }
            let probe = oracle_infinite_probe(&g1, &g2, &g3, max_unroll.unwrap_or(DEFAULT_UNROLL))?;
            let values: Vec<String> = probe.values.iter().map(|v| v.to_string()).collect();
            eprintln!("glcs: unrolled values {}", values.join(" "));
            Ok(match probe.verdict {
                Verdict::Growing => "inf\n".into(),
                Verdict::Stable => render(probe.last()) + "\n",
            })
        }
        Command::Atomize { g } => Ok(write_atomic(&load(&g)?)),
        Command::Condense { g } => Ok(write_condensed(&condense(&load(&g)?))),
        Command::Gen {
            seed,
            vertices,
            edges,
            alphabet,
            dag,
        } => Ok(write_graph(&gen_random_graph(seed, vertices, edges, alphabet, dag)?)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, message) = match failure {
                Failure::Input(m) => (1, m),
                Failure::Structure(m) => (2, m),
                Failure::Capacity(m) => (3, m),
            };
            eprintln!("glcs: {message}");
            ExitCode::from(code)
        }
    }
}
