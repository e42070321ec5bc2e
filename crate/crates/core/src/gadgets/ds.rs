use serde::{Deserialize, Serialize};

use super::decomp::composite_decomposition;
use super::{
    binomial, circuit_count, circuit_tree, is_exact_cover, subsets_of_size, CertifiedInstance,
    Manifest, Problem,
};
use crate::error::GadgetError;
use crate::graph::{glue, BoundariedGraph, GraphBuilder};
use crate::stats::Answer;

/// Boundary split into three equal parts `B`, `D`, `W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DsPartitionSpec {
    pub b: Vec<usize>,
    pub d: Vec<usize>,
    pub w: Vec<usize>,
}

impl DsPartitionSpec {
    pub fn new(b: Vec<usize>, d: Vec<usize>, w: Vec<usize>) -> Result<Self, GadgetError> {
        let mut spec = DsPartitionSpec { b, d, w };
        spec.b.sort_unstable();
        spec.d.sort_unstable();
        spec.w.sort_unstable();
        spec.validate()?;
        Ok(spec)
    }

    pub fn s(&self) -> usize {
        self.b.len() + self.d.len() + self.w.len()
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        let s = self.s();
        if !s.is_multiple_of(3) {
            return Err(GadgetError::NotDivisibleByThree(s));
        }
        if !is_exact_cover(s, &[&self.b, &self.d, &self.w]) {
            return Err(GadgetError::NotAPartition { s });
        }
        if [&self.b, &self.d, &self.w].iter().any(|p| p.len() != s / 3) {
            return Err(GadgetError::WrongBlockSize { expected: s / 3 });
        }
        Ok(())
    }

    fn sorted(&self) -> Self {
        let mut x = self.clone();
        x.b.sort_unstable();
        x.d.sort_unstable();
        x.w.sort_unstable();
        x
    }
}

/// Budget constants of the family at boundary size `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DsBudget {
    /// Circuits in a tree over `s/3` inputs.
    pub lambda: u32,
    pub alpha: u32,
    pub p_i: u32,
    pub q: u32,
}

impl DsBudget {
    pub fn for_s(s: usize) -> Result<Self, GadgetError> {
        if s == 0 || !s.is_multiple_of(3) {
            return Err(GadgetError::NotDivisibleByThree(s));
        }
        let k = s / 3;
        let lambda = circuit_count(k);
        let alpha = binomial(2 * k, k) as u32 * 2 * lambda + 1;
        Ok(DsBudget {
            lambda,
            alpha,
            p_i: binomial(s, k) as u32 * alpha,
            q: k as u32 + 1,
        })
    }

    fn slots(s: usize) -> u32 {
        binomial(2 * (s / 3), s / 3) as u32
    }
}

/// Every ordered split of `1..=s` into thirds.
pub fn ds_family(s: usize) -> Result<Vec<DsPartitionSpec>, GadgetError> {
    if !s.is_multiple_of(3) {
        return Err(GadgetError::NotDivisibleByThree(s));
    }
    let k = s / 3;
    let mut out = Vec::new();
    for b in subsets_of_size(s, k) {
        let rest: Vec<usize> = (1..=s).filter(|x| !b.contains(x)).collect();
        for pick in subsets_of_size(rest.len(), k) {
            let d: Vec<usize> = pick.iter().map(|&i| rest[i - 1]).collect();
            let w: Vec<usize> = rest.iter().copied().filter(|x| !d.contains(x)).collect();
            out.push(DsPartitionSpec { b: b.clone(), d, w });
        }
    }
    Ok(out)
}

/// Two pendants on every `B` vertex and one shared vertex with two pendants
/// adjacent to all of `D`; `W` is left alone. Budget `q = s/3 + 1`.
pub fn ds_enforcer(spec: &DsPartitionSpec) -> Result<(BoundariedGraph, u32), GadgetError> {
    spec.validate()?;
    let s = spec.s();
    let mut g = GraphBuilder::new(s);
    for &x in &spec.b {
        for p in g.add_vertices(2) {
            g.add_edge(x, p)?;
        }
    }
    let hub = g.add_vertex();
    for p in g.add_vertices(2) {
        g.add_edge(hub, p)?;
    }
    for &x in &spec.d {
        g.add_edge(hub, x)?;
    }
    Ok((
        BoundariedGraph::new(g.build(), (1..=s).collect())?,
        s as u32 / 3 + 1,
    ))
}

/// Adds the circuit: triangle `u, a, b` and path `a - w1 - m - y - w2`, with
/// inputs on `w1` and `w2`. Returns `u`.
///
/// Two internal vertices are always needed. A pair containing `u` dominates
/// the gadget exactly when an input is in the solution; otherwise no optimal
/// pair uses `u` or touches the inputs.
pub fn ds_circuit(g: &mut GraphBuilder, v1: usize, v2: usize) -> usize {
    let [u, a, b, w1, m, y, w2] = [(); 7].map(|_| g.add_vertex());
    for (x, z) in [
        (u, a),
        (u, b),
        (a, b),
        (a, w1),
        (w1, m),
        (m, y),
        (y, w2),
        (v1, w1),
        (v2, w2),
    ] {
        g.add_edge(x, z).expect("circuit vertices exist");
    }
    u
}

/// Circuit tree over `d` with a fresh vertex `u'` on its top; returns `u'`
/// and the number of circuits.
pub fn ds_lambda(g: &mut GraphBuilder, d: &[usize]) -> (usize, u32) {
    let (top, count) = circuit_tree(g, d, ds_circuit);
    let up = g.add_vertex();
    if let Some(top) = top {
        g.add_edge(up, top).expect("tree top exists");
    }
    (up, count)
}

/// Tester for one `W`, given the `D` parts of the chosen members with that
/// `W`. Padding isolated vertices keep its optimum at `alpha` regardless of
/// how many members were chosen.
pub fn ds_tester(s: usize, w: &[usize], ds: &[Vec<usize>]) -> Result<BoundariedGraph, GadgetError> {
    let budget = DsBudget::for_s(s)?;
    let mut g = GraphBuilder::new(s);
    let pad = if ds.is_empty() {
        let [c1, c2] = [g.add_vertex(), g.add_vertex()];
        g.add_edge(c1, c2)?;
        for &x in w {
            g.add_edge(c1, x)?;
        }
        DsBudget::slots(s)
    } else {
        let [a, b] = [g.add_vertex(), g.add_vertex()];
        g.add_edge(a, b)?;
        for &x in w {
            g.add_edge(b, x)?;
        }
        for d in ds {
            let (up, count) = ds_lambda(&mut g, d);
            debug_assert_eq!(count, budget.lambda);
            g.add_edge(up, a)?;
        }
        DsBudget::slots(s) - ds.len() as u32
    };
    g.add_vertices((pad * 2 * budget.lambda) as usize);
    Ok(BoundariedGraph::new(g.build(), (1..=s).collect())?)
}

/// Testers for every `W` (each seeing the chosen members with that `W`),
/// then the probe's enforcer.
pub fn ds_family_instance(
    family_subset: &[DsPartitionSpec],
    probe: &DsPartitionSpec,
) -> Result<CertifiedInstance, GadgetError> {
    probe.validate()?;
    let s = probe.s();
    let budget = DsBudget::for_s(s)?;
    let chosen: Vec<DsPartitionSpec> = family_subset.iter().map(DsPartitionSpec::sorted).collect();
    for x in &chosen {
        x.validate()?;
        if x.s() != s {
            return Err(GadgetError::WrongBlockSize { expected: s / 3 });
        }
    }
    debug_assert!(check_ds_circuit());

    let mut acc = BoundariedGraph::bare(s);
    for w in subsets_of_size(s, s / 3) {
        let mut ds: Vec<Vec<usize>> = chosen
            .iter()
            .filter(|x| x.w == w)
            .map(|x| x.d.clone())
            .collect();
        ds.sort();
        ds.dedup();
        acc = glue(&acc, &ds_tester(s, &w, &ds)?)?;
    }
    let (enforcer, q) = ds_enforcer(probe)?;
    let (graph, boundary) = glue(&acc, &enforcer)?.into_parts();
    let decomposition = composite_decomposition(&graph, &boundary);
    let inside = chosen.contains(&probe.sorted());
    let manifest = Manifest {
        problem: Problem::Ds,
        s,
        family_subset: chosen
            .iter()
            .map(|x| serde_json::to_value(x).unwrap())
            .collect(),
        probe: serde_json::to_value(probe).unwrap(),
        expected: Answer::Size(budget.p_i + q + inside as u32),
        p_i: Some(budget.p_i),
        q: Some(q),
        lambda: Some(budget.lambda),
        alpha: Some(budget.alpha),
        n: graph.n(),
        depth: decomposition.depth(),
        certified: None,
    };
    Ok(CertifiedInstance {
        graph,
        decomposition,
        manifest,
    })
}

/// Exhaustive check of [`ds_circuit`] for two inputs and for one input paired
/// with itself, over every choice of inputs in the solution.
pub fn check_ds_circuit() -> bool {
    for inputs in [1usize, 2] {
        let mut b = GraphBuilder::new(inputs);
        let u = ds_circuit(&mut b, 1, inputs);
        let g = b.build();
        let internal: Vec<usize> = (inputs + 1..=g.n()).collect();
        let touching: Vec<usize> = (1..=inputs).flat_map(|v| g.neighbors(v).to_vec()).collect();
        for chosen_inputs in 0u32..1 << inputs {
            let mut pairs = Vec::new();
            for mask in 0u32..1 << internal.len() {
                if mask.count_ones() > 2 {
                    continue;
                }
                let set: Vec<usize> = internal
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .chain((1..=inputs).filter(|v| chosen_inputs >> (v - 1) & 1 == 1))
                    .collect();
                let dominated =
                    |v: usize| set.contains(&v) || g.neighbors(v).iter().any(|w| set.contains(w));
                if internal.iter().all(|&v| dominated(v)) {
                    pairs.push((mask.count_ones(), set));
                }
            }
            if pairs.iter().any(|(k, _)| *k < 2) {
                return false;
            }
            let with_u = pairs.iter().any(|(_, set)| set.contains(&u));
            if with_u != (chosen_inputs != 0) {
                return false;
            }
            if chosen_inputs == 0
                && pairs
                    .iter()
                    .any(|(_, set)| set.iter().any(|v| touching.contains(v)))
            {
                return false;
            }
        }
    }
    true
}
