use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use tdsolve_core::gadgets::{
    certify, coloring_family_instance, ds_family_instance, vc_family_instance, CertifiedInstance,
    ColorPartitionSpec, DsPartitionSpec, VcSpec,
};
use tdsolve_core::generate::{clique_chain, random_tree_like, rng};
use tdsolve_core::{
    dfs_decomposition, write_decomposition, write_graph, Graph, TreedepthDecomposition,
};

use crate::Exit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    #[value(name = "3col")]
    Color3,
    Vc,
    Ds,
    /// Random tree-like graphs (seeded by TDSOLVE_SEED).
    Random,
    /// K_t with a chain decomposition.
    Chain,
}

pub struct GenArgs<'a> {
    pub kind: GenKind,
    pub s: Option<usize>,
    pub n: usize,
    pub count: usize,
    pub subset: Option<&'a Path>,
    pub probe: Option<&'a Path>,
    pub out: &'a Path,
    pub name: Option<&'a str>,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Exit> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Exit::input)?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Exit::input)
}

fn seed() -> Result<u64, Exit> {
    match std::env::var("TDSOLVE_SEED") {
        Ok(v) => v
            .parse()
            .with_context(|| format!("TDSOLVE_SEED must be an integer, got `{v}`"))
            .map_err(Exit::input),
        Err(_) => Ok(0),
    }
}

fn write_pair(
    dir: &Path,
    name: &str,
    g: &Graph,
    t: &TreedepthDecomposition,
) -> anyhow::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let gr = dir.join(format!("{name}.gr"));
    let td = dir.join(format!("{name}.td"));
    fs::write(&gr, write_graph(g))?;
    fs::write(&td, write_decomposition(t))?;
    Ok(vec![gr, td])
}

pub fn run(args: GenArgs<'_>) -> Result<Value, Exit> {
    match args.kind {
        GenKind::Random => {
            let seed = seed()?;
            let mut r = rng(seed);
            let mut files = Vec::new();
            for i in 0..args.count {
                let g = random_tree_like(args.n, args.n / 2, &mut r);
                let t = dfs_decomposition(&g).map_err(|e| Exit::input(e.into()))?;
                let name = format!("{}-{i:03}", args.name.unwrap_or("random"));
                files.extend(write_pair(args.out, &name, &g, &t).map_err(Exit::input)?);
            }
            Ok(json!({ "seed": seed, "written": files }))
        }
        GenKind::Chain => {
            let t_size = args
                .s
                .ok_or_else(|| Exit::input(anyhow::anyhow!("--gen chain needs --s")))?;
            let (g, t) = clique_chain(t_size);
            let name = args
                .name
                .map_or_else(|| format!("chain-{t_size:02}"), str::to_owned);
            let files = write_pair(args.out, &name, &g, &t).map_err(Exit::input)?;
            Ok(json!({ "written": files }))
        }
        GenKind::Color3 | GenKind::Vc | GenKind::Ds => gadget(args),
    }
}

fn gadget(args: GenArgs<'_>) -> Result<Value, Exit> {
    let Some(probe) = args.probe else {
        return Err(Exit::input(anyhow::anyhow!(
            "--gen {:?} needs --probe",
            args.kind
        )));
    };
    let inst: CertifiedInstance = match args.kind {
        GenKind::Color3 => {
            let subset: Vec<ColorPartitionSpec> = read_subset(args.subset)?;
            let probe: ColorPartitionSpec = read_json(probe)?;
            check_s(args.s, probe.s())?;
            coloring_family_instance(&subset, &probe)
        }
        GenKind::Vc => {
            let Some(s) = args.s else {
                return Err(Exit::input(anyhow::anyhow!("--gen vc needs --s")));
            };
            let subset: Vec<VcSpec> = read_subset(args.subset)?;
            let probe: VcSpec = read_json(probe)?;
            vc_family_instance(s, &subset, &probe)
        }
        GenKind::Ds => {
            let subset: Vec<DsPartitionSpec> = read_subset(args.subset)?;
            let probe: DsPartitionSpec = read_json(probe)?;
            check_s(args.s, probe.s())?;
            ds_family_instance(&subset, &probe)
        }
        _ => unreachable!(),
    }
    .map_err(|e| Exit::input(e.into()))?;

    let mut manifest = inst.manifest.clone();
    let cert = certify(&inst).map_err(crate::classify)?;
    if cert.matches {
        manifest.certified = Some(cert.method.to_owned());
    }
    let name = args.name.map_or_else(
        || format!("{}-s{}", manifest.problem.name(), manifest.s),
        str::to_owned,
    );
    let mut files =
        write_pair(args.out, &name, &inst.graph, &inst.decomposition).map_err(Exit::input)?;
    let path = args.out.join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Exit::input(e.into()))?;
    fs::write(&path, text + "\n").map_err(|e| Exit::input(e.into()))?;
    files.push(path);
    if !cert.matches {
        eprintln!(
            "warning: expected {} but {} found {}",
            manifest.expected, cert.method, cert.actual
        );
    }
    Ok(json!({
        "written": files,
        "manifest": manifest,
        "certificate": { "method": cert.method, "actual": cert.actual, "matches": cert.matches },
    }))
}

fn read_subset<T: DeserializeOwned>(path: Option<&Path>) -> Result<Vec<T>, Exit> {
    match path {
        Some(p) => read_json(p),
        None => Ok(Vec::new()),
    }
}

fn check_s(flag: Option<usize>, actual: usize) -> Result<(), Exit> {
    match flag {
        Some(s) if s != actual => Err(Exit::input(anyhow::anyhow!(
            "--s {s} does not match the probe's boundary size {actual}"
        ))),
        _ => Ok(()),
    }
}
