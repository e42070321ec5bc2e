//! `tdsolve`: solve graphs with treedepth decompositions, generate gadget
//! instances and run corpora.

mod bench;
mod gen;
mod solve;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use serde_json::json;
use tdsolve_core::gadgets::Problem;
use tdsolve_core::{
    dfs_decomposition, parse_decomposition, parse_graph, validate, ConvMode, SolveError,
};

use crate::gen::GenKind;
use crate::solve::{execute_all, plan, Algo};

#[derive(Parser, Debug)]
#[command(
    name = "tdsolve",
    version,
    about = "Exact solvers on treedepth decompositions"
)]
struct Cli {
    /// Problem to solve (default ds; bench falls back to each manifest).
    #[arg(long)]
    problem: Option<Problem>,
    /// Solver; `all` runs every applicable one and checks they agree.
    #[arg(long, value_enum, default_value_t = Algo::Hybrid)]
    algo: Algo,
    /// Subset convolution used by the hybrid solver.
    #[arg(long, default_value = "fast")]
    conv: ConvMode,
    /// Graph in .gr format.
    #[arg(long, conflicts_with_all = ["gen", "bench"])]
    graph: Option<PathBuf>,
    /// Decomposition in .td format; a DFS tree is used when absent.
    #[arg(long, requires = "graph")]
    td: Option<PathBuf>,
    /// Write a generated instance instead of solving.
    #[arg(long, value_enum, conflicts_with = "bench")]
    gen: Option<GenKind>,
    /// Boundary size for gadgets, clique size for `--gen chain`.
    #[arg(long)]
    s: Option<usize>,
    /// JSON array of family members to test against.
    #[arg(long, requires = "gen")]
    subset: Option<PathBuf>,
    /// JSON family member glued as the enforcer.
    #[arg(long, requires = "gen")]
    probe: Option<PathBuf>,
    /// Output directory for generated files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Base name of generated files.
    #[arg(long)]
    name: Option<String>,
    /// Vertices per graph for `--gen random`.
    #[arg(long, default_value_t = 30)]
    n: usize,
    /// Number of graphs for `--gen random`.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Solve every .gr file in a directory, one JSON line per algorithm.
    #[arg(long)]
    bench: Option<PathBuf>,
    /// Worker threads for `--bench`.
    #[arg(long)]
    jobs: Option<usize>,
    /// Branch-and-bound pruning in the vertex cover solver.
    #[arg(long)]
    bnb: bool,
}

/// Error with the exit code it maps to.
#[derive(Debug)]
pub struct Exit {
    code: u8,
    err: anyhow::Error,
}

impl Exit {
    pub fn input(err: anyhow::Error) -> Self {
        Exit { code: 1, err }
    }

    pub fn solver(err: anyhow::Error) -> Self {
        Exit { code: 2, err }
    }
}

/// Bad decompositions and graphs are input errors; the rest are solver ones.
pub fn classify(e: SolveError) -> Exit {
    match e {
        SolveError::InvalidDecomposition(_) | SolveError::Graph(_) => Exit::input(e.into()),
        _ => Exit::solver(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.err);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Exit> {
    let mut stdout = std::io::stdout().lock();
    if let Some(kind) = cli.gen {
        let out = gen::run(gen::GenArgs {
            kind,
            s: cli.s,
            n: cli.n,
            count: cli.count,
            subset: cli.subset.as_deref(),
            probe: cli.probe.as_deref(),
            out: &cli.out,
            name: cli.name.as_deref(),
        })?;
        writeln!(stdout, "{out}").map_err(|e| Exit::input(e.into()))?;
        return Ok(());
    }
    if let Some(dir) = &cli.bench {
        let rows = bench::run(bench::BenchArgs {
            dir,
            problem: cli.problem,
            algo: cli.algo,
            conv: cli.conv,
            bnb: cli.bnb,
            jobs: cli.jobs,
        })?;
        for row in rows {
            writeln!(stdout, "{row}").map_err(|e| Exit::input(e.into()))?;
        }
        return Ok(());
    }
    let Some(path) = &cli.graph else {
        return Err(Exit::input(anyhow::anyhow!(
            "one of --graph, --gen or --bench is required"
        )));
    };

    let read = |p: &PathBuf| {
        fs::read_to_string(p)
            .with_context(|| format!("reading {}", p.display()))
            .map_err(Exit::input)
    };
    let g = parse_graph(&read(path)?)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Exit::input)?;
    let t = match &cli.td {
        Some(p) => parse_decomposition(&read(p)?)
            .with_context(|| format!("parsing {}", p.display()))
            .map_err(Exit::input)?,
        None => dfs_decomposition(&g).map_err(|e| Exit::input(e.into()))?,
    };
    let valid = validate(&g, &t);
    let instance = json!({
        "graph": path,
        "n": g.n(),
        "m": g.m(),
        "depth": t.depth(),
    });
    if let Err(v) = valid {
        let out = json!({ "instance": instance, "stats": null, "valid_decomposition": false });
        writeln!(stdout, "{out}").map_err(|e| Exit::input(e.into()))?;
        return Err(Exit::input(anyhow::anyhow!("invalid decomposition: {v}")));
    }

    let problem = cli.problem.unwrap_or(Problem::Ds);
    let runs = plan(problem, cli.algo, cli.conv, cli.bnb).map_err(|e| Exit::solver(e.into()))?;
    let stats = execute_all(problem, &runs, &g, &t).map_err(classify)?;
    let stats = if cli.algo == Algo::All {
        json!(stats)
    } else {
        json!(stats[0])
    };
    let out = json!({ "instance": instance, "stats": stats, "valid_decomposition": true });
    writeln!(stdout, "{out}").map_err(|e| Exit::input(e.into()))?;
    Ok(())
}
