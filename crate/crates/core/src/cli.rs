//! The `ssc` command line.
//!
//! Exit codes: 0 success / accepted / colorable, 1 rejected / not colorable /
//! construction failure, 2 malformed input or usage, 3 inconclusive search.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::coloring::{color_from_packing, verify_coloring, Coloring, PackingRealization, Verdict};
use crate::error::Error;
use crate::gf2::Dimension;
use crate::graph::Graph;
use crate::search::{enumerate_colorable, solve, Outcome, SearchConfig};
use crate::steiner::TripleSystem;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "ssc", version, about = "Decide, construct and verify strong set-colorings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the Steiner triple system S(2,3,2^n-1) of PG(n-1,2)
    GenSts {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring certificate against a graph
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Build a coloring from a packing realization
    Color {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        realization: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a strong set-coloring
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// Count all colorings
        #[arg(long)]
        all: bool,
        /// Fix the first vertex's label (verdict-preserving)
        #[arg(long)]
        symmetry: bool,
        #[arg(long, value_name = "K")]
        node_limit: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the strongly set-colorable graphs with |V|+|E| = 2^n-1 (n <= 4)
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        connected: bool,
    },
}

/// Parses `args` (including the program name), runs the subcommand, and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            EXIT_INPUT
        }
    }
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Input(Error),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Input(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(PathBuf::from("<output>"), e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn in_file(path: &Path, e: Error) -> Failure {
    Failure::Input(Error::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Graph::parse(&read(path)?).map_err(|e| in_file(path, e))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    match command {
        Command::GenSts { n, out: file } => {
            let sts = TripleSystem::projective(Dimension::new(n)?);
            let count = sts.blocks().len();
            match file {
                Some(path) => {
                    write(&path, &sts.to_text())?;
                    writeln!(out, "{count} blocks")?;
                }
                None => {
                    out.write_all(sts.to_text().as_bytes())?;
                    writeln!(err, "{count} blocks")?;
                }
            }
            Ok(EXIT_OK)
        }

        Command::Verify { graph, coloring } => {
            let g = load_graph(&graph)?;
            let c = Coloring::parse(&read(&coloring)?, &g).map_err(|e| in_file(&coloring, e))?;
            match verify_coloring(&g, &c)? {
                Verdict::Accept => {
                    writeln!(out, "accept")?;
                    Ok(EXIT_OK)
                }
                Verdict::Reject(reason) => {
                    writeln!(out, "reject")?;
                    writeln!(err, "{reason}")?;
                    Ok(EXIT_NO)
                }
            }
        }

        Command::Color { graph, realization, out: file } => {
            let g = load_graph(&graph)?;
            let pr = PackingRealization::parse(&read(&realization)?, &g).map_err(|e| in_file(&realization, e))?;
            match color_from_packing(&g, &pr) {
                Ok(c) => {
                    emit_certificate(&g, &c, file.as_deref(), out)?;
                    Ok(EXIT_OK)
                }
                Err(Error::Packing(failure)) => {
                    writeln!(out, "failure {}", failure.class())?;
                    writeln!(err, "{failure}")?;
                    Ok(EXIT_NO)
                }
                Err(e) => Err(e.into()),
            }
        }

        Command::Solve { graph, all, symmetry, node_limit, threads, out: file } => {
            let g = load_graph(&graph)?;
            let cfg = SearchConfig { find_all: all, use_symmetry: symmetry, node_limit, threads };
            let report = solve(&g, &cfg)?;
            writeln!(err, "nodes: {}", report.nodes)?;
            let code = match &report.outcome {
                Outcome::Colorable(_) => {
                    writeln!(out, "colorable")?;
                    EXIT_OK
                }
                Outcome::NotColorableSize => {
                    writeln!(out, "not colorable (size)")?;
                    writeln!(err, "|V|+|E| = {} is not of the form 2^n-1", g.order_plus_size())?;
                    EXIT_NO
                }
                Outcome::NotColorable => {
                    writeln!(out, "not colorable")?;
                    EXIT_NO
                }
                Outcome::Inconclusive => {
                    writeln!(out, "inconclusive")?;
                    EXIT_INCONCLUSIVE
                }
            };
            if let Some(count) = report.count {
                writeln!(out, "count {count}")?;
            }
            if let Outcome::Colorable(c) = &report.outcome {
                emit_certificate(&g, c, file.as_deref(), out)?;
            }
            Ok(code)
        }

        Command::Enumerate { n, connected } => {
            let graphs = enumerate_colorable(Dimension::new(n)?, connected)?;
            for g in &graphs {
                writeln!(out, "{}", g.to_compact())?;
            }
            writeln!(out, "# {} graphs", graphs.len())?;
            Ok(EXIT_OK)
        }
    }
}

fn emit_certificate(g: &Graph, c: &Coloring, file: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match file {
        Some(path) => write(path, &c.to_text(g)),
        None => Ok(out.write_all(c.to_text(g).as_bytes())?),
    }
}
