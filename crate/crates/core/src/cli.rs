//! The `crystal` command line tool.
//!
//! Machine-readable output goes to stdout as JSON lines, summaries go to
//! stderr. Exit status is 0 when every requested check passes, 1 on a
//! violation and 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cartan::{Color, RootSystemType, WeightVector};
use crate::crystal::{generate, generate_full, walks_to_highest, CrystalGraph};
use crate::error::{CrystalError, Result};
use crate::io::{doc_to_dot, graph_from_json, graph_to_json, GraphDoc};
use crate::perfect::{enumerate_walks, is_consecutive, walk_graphs, Walk};
use crate::tensor::construct_walk_node;
use crate::verify::{qualifying, run_theorem, sweep, ExceptionTable, SweepConfig, Theorem, VerificationReport};

/// Environment variable holding the default truncation depth.
pub const DEPTH_ENV: &str = "CRYSTAL_DEPTH_DEFAULT";
const DEPTH_FALLBACK: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "crystal", version, about = "Highest weight crystals, perfect crystals and walk checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a crystal graph and write it as JSON.
    Gen(GenArgs),
    /// Print a graph file as DOT.
    Dot { file: PathBuf },
    /// List singular nodes of a graph file.
    Singular { file: PathBuf },
    /// List all walks from the highest node to a node.
    Walks {
        file: PathBuf,
        #[arg(long)]
        to: String,
    },
    /// Dump the perfect crystal(s) of a type, or enumerate walks on them.
    Perfect(PerfectArgs),
    /// Build the tensor node of a walk and check it.
    TensorCheck {
        #[arg(long = "type")]
        ty: RootSystemType,
        #[arg(long)]
        walk: Walk,
    },
    /// Run one checker on a graph file.
    Verify {
        file: PathBuf,
        #[arg(long)]
        theorem: Theorem,
        /// TOML file with an `[exceptions]` table.
        #[arg(long)]
        exceptions: Option<PathBuf>,
    },
    /// Run a grid of checkers. Without `--config` the built-in grid runs.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long = "type")]
    pub ty: RootSystemType,
    /// Dense coefficients of λ over the index set, e.g. `1,0,2`.
    #[arg(long)]
    pub weight: String,
    /// Truncation depth. Finite types default to the whole crystal.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PerfectArgs {
    #[arg(long = "type")]
    pub ty: RootSystemType,
    /// Reverse all arrows.
    #[arg(long)]
    pub reversed: bool,
    /// Enumerate consecutive walks instead of dumping graphs.
    #[arg(long, requires_all = ["from_color", "len"])]
    pub walks: bool,
    #[arg(long)]
    pub from_color: Option<Color>,
    #[arg(long)]
    pub len: Option<usize>,
}

/// Depth from `CRYSTAL_DEPTH_DEFAULT`, or 8.
pub fn default_depth() -> Result<usize> {
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CrystalError::InvalidArgument(format!("{DEPTH_ENV}={v} is not a depth"))),
        Err(_) => Ok(DEPTH_FALLBACK),
    }
}

/// Parse arguments and run. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn load(path: &Path) -> Result<CrystalGraph> {
    graph_from_json(&std::fs::read_to_string(path)?)
}

fn summarize(reports: &[VerificationReport], err: &mut dyn Write) -> Result<bool> {
    let mut all = true;
    for r in reports {
        all &= r.ok();
        writeln!(
            err,
            "{} {} {}: {:?}, {} checked, {} skipped, {} violations",
            r.ty,
            r.lambda,
            r.theorem,
            r.status,
            r.instances_checked,
            r.skipped_frontier,
            r.violations.len()
        )?;
    }
    Ok(all)
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Gen(a) => {
            let lambda = WeightVector::parse_dense(a.ty, &a.weight)?;
            let graph = match a.depth {
                Some(d) => generate(a.ty, &lambda, d)?,
                None if a.ty.is_affine() => generate(a.ty, &lambda, default_depth()?)?,
                None => generate_full(a.ty, &lambda)?,
            };
            std::fs::write(&a.out, graph_to_json(&graph))?;
            writeln!(err, "{} nodes, {} edges", graph.len(), graph.edges().len())?;
            Ok(true)
        }
        Command::Dot { file } => {
            let doc = GraphDoc::from_json(&std::fs::read_to_string(file)?)?;
            out.write_all(doc_to_dot(&doc).as_bytes())?;
            Ok(true)
        }
        Command::Singular { file } => {
            #[derive(Serialize)]
            struct Line<'a> {
                id: &'a str,
                depth: usize,
                eps: String,
                interior: bool,
                singular_parent: bool,
            }
            let graph = load(&file)?;
            let mut count = 0;
            for idx in 0..graph.len() {
                if !graph.is_singular(idx) {
                    continue;
                }
                count += 1;
                let r = graph.node(idx);
                json_line(
                    out,
                    &Line {
                        id: &r.id,
                        depth: r.depth(),
                        eps: graph.epsilon_vector(idx).to_string(),
                        interior: r.interior,
                        singular_parent: qualifying(&graph, idx).is_some(),
                    },
                )?;
            }
            writeln!(err, "{count} singular nodes")?;
            Ok(true)
        }
        Command::Walks { file, to } => {
            let graph = load(&file)?;
            let idx = graph.lookup(&to)?;
            let walks = walks_to_highest(&graph, idx)?;
            for w in &walks {
                json_line(out, &serde_json::json!({ "to": to, "walk": w }))?;
            }
            writeln!(err, "{} walks", walks.len())?;
            Ok(true)
        }
        Command::Perfect(a) => {
            let mut graphs = walk_graphs(a.ty)?;
            if a.reversed {
                graphs = graphs.iter().map(|g| g.reversed()).collect::<Result<_>>()?;
            }
            for pc in &graphs {
                match (a.walks, a.from_color, a.len) {
                    (true, Some(c), Some(k)) => {
                        for w in enumerate_walks(pc, c, k) {
                            json_line(out, &serde_json::json!({ "graph": pc.label(), "walk": w }))?;
                        }
                    }
                    _ => {
                        out.write_all(GraphDoc::from_perfect(pc).to_json().as_bytes())?;
                    }
                }
                writeln!(err, "{}: {} nodes, {} arrows", pc.label(), pc.len(), pc.arrows().len())?;
            }
            Ok(true)
        }
        Command::TensorCheck { ty, walk } => {
            walk.check_colors(ty)?;
            let mut ran = false;
            let mut all = true;
            for pc in walk_graphs(ty)? {
                if !is_consecutive(&pc, &walk) {
                    continue;
                }
                let (_, report) = construct_walk_node(&pc, &walk)?;
                all &= report.pass;
                writeln!(err, "{} {}: {}", pc.label(), walk, if report.pass { "pass" } else { "FAIL" })?;
                json_line(out, &report)?;
                ran = true;
            }
            if !ran {
                return Err(CrystalError::NotConsecutive(format!("{walk} on {ty}")));
            }
            Ok(all)
        }
        Command::Verify { file, theorem, exceptions } => {
            let graph = load(&file)?;
            let table = match exceptions {
                Some(p) => SweepConfig::load_exceptions(&p)?,
                None => ExceptionTable::default(),
            };
            let reports = run_theorem(&graph, theorem, &table)?;
            for r in &reports {
                json_line(out, r)?;
            }
            summarize(&reports, err)
        }
        Command::Sweep { config } => {
            let config = match config {
                Some(p) => SweepConfig::load(&p)?,
                None => SweepConfig::default_grid(),
            };
            let reports = sweep(&config)?;
            for r in &reports {
                json_line(out, r)?;
            }
            let failed = reports.iter().filter(|r| !r.ok()).count();
            let all = summarize(&reports, err)?;
            writeln!(err, "{} reports, {} failing", reports.len(), failed)?;
            Ok(all)
        }
    }
}
