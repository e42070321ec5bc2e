//! Boundaried gadget families with known optima, used as a hard test corpus.
//!
//! Each family has enforcers `H` (one per member), testers `Γ` and circuit
//! gadgets. A composed instance glues the testers for a subset `I` of the
//! family onto the enforcer of a probe member; its optimum is known in closed
//! form and moves by exactly one depending on whether the probe is in `I`.

mod coloring;
mod decomp;
mod ds;
mod vc;

use serde::{Deserialize, Serialize};

use crate::baseline::{color3_branch, vc_branch};
use crate::classic::{domset_classic_dp, CLASSIC_MAX_DEPTH};
use crate::error::SolveError;
use crate::graph::{Graph, GraphBuilder};
use crate::hybrid::{solve_hybrid, ConvMode};
use crate::oracle::{
    oracle_3col, oracle_domset, oracle_vc, ORACLE_COLOR_LIMIT, ORACLE_SUBSET_LIMIT,
};
use crate::stats::Answer;
use crate::treedepth::TreedepthDecomposition;

pub use coloring::{
    check_coloring_circuit, coloring_circuit, coloring_enforcer, coloring_family,
    coloring_family_instance, coloring_tester, ColorPartitionSpec,
};
pub use decomp::composite_decomposition;
pub use ds::{
    check_ds_circuit, ds_circuit, ds_enforcer, ds_family, ds_family_instance, ds_lambda, ds_tester,
    DsBudget, DsPartitionSpec,
};
pub use vc::{
    check_vc_circuit, vc_circuit, vc_enforcer, vc_family, vc_family_instance, vc_instance_over,
    vc_tester, VcSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Problem {
    #[serde(rename = "ds")]
    Ds,
    #[serde(rename = "vc")]
    Vc,
    #[serde(rename = "3col")]
    Color3,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Ds => "ds",
            Problem::Vc => "vc",
            Problem::Color3 => "3col",
        }
    }
}

impl std::str::FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ds" => Ok(Problem::Ds),
            "vc" => Ok(Problem::Vc),
            "3col" => Ok(Problem::Color3),
            other => Err(format!("unknown problem `{other}`")),
        }
    }
}

/// Description written next to a generated instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub problem: Problem,
    pub s: usize,
    #[serde(rename = "I")]
    pub family_subset: Vec<serde_json::Value>,
    pub probe: serde_json::Value,
    pub expected: Answer,
    #[serde(rename = "p_I")]
    pub p_i: Option<u32>,
    pub q: Option<u32>,
    pub lambda: Option<u32>,
    pub alpha: Option<u32>,
    pub n: usize,
    pub depth: usize,
    #[serde(default)]
    pub certified: Option<String>,
}

/// A composed gadget instance with its decomposition and expected answer.
#[derive(Clone, Debug)]
pub struct CertifiedInstance {
    pub graph: Graph,
    pub decomposition: TreedepthDecomposition,
    pub manifest: Manifest,
}

impl CertifiedInstance {
    pub fn problem(&self) -> Problem {
        self.manifest.problem
    }

    pub fn expected(&self) -> Answer {
        self.manifest.expected
    }
}

/// Outcome of re-solving an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub method: &'static str,
    pub actual: Answer,
    pub matches: bool,
}

/// Solves the instance independently of its construction: by brute force
/// when small, otherwise by a treedepth solver (two agreeing ones for DS).
pub fn certify(inst: &CertifiedInstance) -> Result<Certificate, SolveError> {
    let g = &inst.graph;
    let t = &inst.decomposition;
    let (method, actual) = match inst.problem() {
        Problem::Color3 if g.n() <= ORACLE_COLOR_LIMIT => {
            ("oracle", Answer::Colorable(oracle_3col(g)?))
        }
        Problem::Color3 => ("color3-branch", Answer::Colorable(color3_branch(g, t)?)),
        Problem::Vc if g.n() <= ORACLE_SUBSET_LIMIT => ("oracle", Answer::Size(oracle_vc(g)?)),
        Problem::Vc => ("vc-branch", Answer::Size(vc_branch(g, t)?)),
        Problem::Ds if g.n() <= ORACLE_SUBSET_LIMIT => ("oracle", Answer::Size(oracle_domset(g)?)),
        Problem::Ds => {
            let h = solve_hybrid(g, t, ConvMode::Fast)?;
            if t.depth() <= CLASSIC_MAX_DEPTH {
                let c = domset_classic_dp(g, t)?;
                if c != h {
                    return Err(SolveError::Disagreement(format!(
                        "hybrid {h}, classic-dp {c}"
                    )));
                }
                ("hybrid+classic-dp", Answer::Size(h))
            } else {
                let n = solve_hybrid(g, t, ConvMode::Naive)?;
                if n != h {
                    return Err(SolveError::Disagreement(format!(
                        "hybrid-fast {h}, hybrid-naive {n}"
                    )));
                }
                ("hybrid-fast+hybrid-naive", Answer::Size(h))
            }
        }
    };
    Ok(Certificate {
        method,
        actual,
        matches: actual == inst.expected(),
    })
}

/// Builds a tree of circuits over `inputs` (sorted, paired consecutively, an
/// odd one out paired with itself) and returns the top output and the number
/// of circuits. No inputs gives no circuit.
pub(crate) fn circuit_tree(
    b: &mut GraphBuilder,
    inputs: &[usize],
    circuit: fn(&mut GraphBuilder, usize, usize) -> usize,
) -> (Option<usize>, u32) {
    let mut layer: Vec<usize> = inputs.to_vec();
    layer.sort_unstable();
    if layer.is_empty() {
        return (None, 0);
    }
    let mut count = 0;
    loop {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        for pair in layer.chunks(2) {
            let v2 = *pair.last().unwrap();
            next.push(circuit(b, pair[0], v2));
            count += 1;
        }
        if next.len() == 1 {
            return (Some(next[0]), count);
        }
        layer = next;
    }
}

/// Number of circuits in a tree over `k` inputs.
pub fn circuit_count(k: usize) -> u32 {
    if k == 0 {
        return 0;
    }
    let mut k = k;
    let mut count = 0;
    loop {
        let next = k.div_ceil(2);
        count += next as u32;
        if next == 1 {
            return count;
        }
        k = next;
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

// Checks that `parts` is an exact cover of 1..=s.
pub(crate) fn is_exact_cover(s: usize, parts: &[&[usize]]) -> bool {
    let mut seen = vec![false; s + 1];
    let mut total = 0;
    for part in parts {
        for &v in *part {
            if v == 0 || v > s || seen[v] {
                return false;
            }
            seen[v] = true;
            total += 1;
        }
    }
    total == s
}

// All `k`-subsets of 1..=s in lexicographic order.
pub(crate) fn subsets_of_size(s: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, s: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=s {
            cur.push(v);
            go(v + 1, s, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, s, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(3, 1), 3);
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(circuit_count(1), 1);
        assert_eq!(circuit_count(2), 1);
        assert_eq!(circuit_count(3), 3);
        assert_eq!(circuit_count(4), 3);
        assert_eq!(circuit_count(5), 6);
    }

    #[test]
    fn tree_matches_count() {
        fn dummy(b: &mut GraphBuilder, v1: usize, v2: usize) -> usize {
            let u = b.add_vertex();
            b.add_edge(u, v1).unwrap();
            b.add_edge(u, v2).unwrap();
            u
        }
        for k in 0..9 {
            let mut b = GraphBuilder::new(k);
            let inputs: Vec<usize> = (1..=k).collect();
            let (top, count) = circuit_tree(&mut b, &inputs, dummy);
            assert_eq!(count, circuit_count(k));
            assert_eq!(top.is_some(), k > 0);
            assert_eq!(b.n(), k + count as usize);
        }
    }

    #[test]
    fn problem_names_round_trip() {
        for p in [Problem::Ds, Problem::Vc, Problem::Color3] {
            assert_eq!(p.name().parse::<Problem>(), Ok(p));
            assert_eq!(
                serde_json::to_string(&p).unwrap(),
                format!("\"{}\"", p.name())
            );
        }
    }
}
