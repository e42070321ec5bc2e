use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use rayon::prelude::*;
use serde_json::{json, Value};
use tdsolve_core::gadgets::{Manifest, Problem};
use tdsolve_core::{dfs_decomposition, parse_decomposition, parse_graph, validate, ConvMode};

use crate::solve::{execute, plan, Algo, Run};
use crate::Exit;

pub struct BenchArgs<'a> {
    pub dir: &'a Path,
    pub problem: Option<Problem>,
    pub algo: Algo,
    pub conv: ConvMode,
    pub bnb: bool,
    pub jobs: Option<usize>,
}

struct Instance {
    name: String,
    graph: PathBuf,
}

/// Solves every `.gr` file in the directory with each planned algorithm.
/// Returns one record per (instance, algorithm), sorted by instance name and
/// then algorithm. Per-instance problems are recorded, not fatal.
pub fn run(args: BenchArgs<'_>) -> Result<Vec<Value>, Exit> {
    let mut instances = Vec::new();
    let entries = fs::read_dir(args.dir)
        .with_context(|| format!("reading {}", args.dir.display()))
        .map_err(Exit::input)?;
    for entry in entries {
        let path = entry.map_err(|e| Exit::input(e.into()))?.path();
        if path.extension().is_some_and(|e| e == "gr") {
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            instances.push(Instance { name, graph: path });
        }
    }
    instances.sort_by(|a, b| a.name.cmp(&b.name));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Exit::input(e.into()))?;
    let mut rows: Vec<(String, Run, Value)> = pool.install(|| {
        instances
            .par_iter()
            .flat_map_iter(|inst| solve_instance(inst, &args))
            .collect()
    });
    rows.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
    Ok(rows.into_iter().map(|r| r.2).collect())
}

fn error_row(name: &str, algorithm: &str, err: impl std::fmt::Display) -> Value {
    json!({ "instance": name, "algorithm": algorithm, "error": err.to_string() })
}

fn solve_instance(inst: &Instance, args: &BenchArgs<'_>) -> Vec<(String, Run, Value)> {
    let name = &inst.name;
    let fail = |e: String| vec![(name.clone(), Run::Branch, error_row(name, "load", e))];
    let manifest: Option<Manifest> = match fs::read_to_string(inst.graph.with_extension("json")) {
        Ok(text) => match serde_json::from_str(&text) {
            Ok(m) => Some(m),
            Err(e) => return fail(format!("manifest: {e}")),
        },
        Err(_) => None,
    };
    let problem = args
        .problem
        .or(manifest.as_ref().map(|m| m.problem))
        .unwrap_or(Problem::Ds);
    let g = match fs::read_to_string(&inst.graph)
        .map_err(|e| e.to_string())
        .and_then(|t| parse_graph(&t).map_err(|e| e.to_string()))
    {
        Ok(g) => g,
        Err(e) => return fail(format!("graph: {e}")),
    };
    let t = match fs::read_to_string(inst.graph.with_extension("td")) {
        Ok(text) => match parse_decomposition(&text) {
            Ok(t) => t,
            Err(e) => return fail(format!("decomposition: {e}")),
        },
        Err(_) => match dfs_decomposition(&g) {
            Ok(t) => t,
            Err(e) => return fail(format!("decomposition: {e}")),
        },
    };
    if let Err(v) = validate(&g, &t) {
        return fail(format!("invalid decomposition: {v}"));
    }
    let runs = match plan(problem, args.algo, args.conv, args.bnb) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let expected = manifest.as_ref().map(|m| m.expected);
    runs.into_iter()
        .map(|run| {
            let row = match execute(problem, run, &g, &t) {
                Ok(stats) => json!({
                    "instance": name,
                    "algorithm": run.name(),
                    "problem": problem,
                    "n": g.n(),
                    "depth": t.depth(),
                    "answer": stats.answer,
                    "expected": expected,
                    "matches": expected.map(|e| e == stats.answer),
                    "stats": stats,
                }),
                Err(e) => error_row(name, run.name(), e),
            };
            (name.clone(), run, row)
        })
        .collect()
}
