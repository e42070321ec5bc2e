use serde::{Deserialize, Serialize};

use super::decomp::composite_decomposition;
use super::{circuit_tree, is_exact_cover, CertifiedInstance, Manifest, Problem};
use crate::error::GadgetError;
use crate::graph::{glue, BoundariedGraph, Graph, GraphBuilder};
use crate::partition::enumerate_partitions;
use crate::stats::Answer;

/// Three colour classes covering the boundary labels `1..=s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPartitionSpec {
    pub r: Vec<usize>,
    pub g: Vec<usize>,
    pub b: Vec<usize>,
}

impl ColorPartitionSpec {
    pub fn new(r: Vec<usize>, g: Vec<usize>, b: Vec<usize>) -> Result<Self, GadgetError> {
        let spec = ColorPartitionSpec { r, g, b };
        spec.validate()?;
        Ok(spec)
    }

    pub fn s(&self) -> usize {
        self.r.len() + self.g.len() + self.b.len()
    }

    pub fn validate(&self) -> Result<(), GadgetError> {
        let s = self.s();
        if !is_exact_cover(s, &[&self.r, &self.g, &self.b]) {
            return Err(GadgetError::NotAPartition { s });
        }
        Ok(())
    }

    pub fn classes(&self) -> [&[usize]; 3] {
        [&self.r, &self.g, &self.b]
    }

    /// The partition itself, ignoring which class got which colour.
    pub fn canonical(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .classes()
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| {
                let mut c = c.to_vec();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort();
        out
    }

    /// Same partition of the boundary.
    pub fn same_partition(&self, other: &ColorPartitionSpec) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Partitions of `1..=s` into at most three classes, classes ordered by
/// smallest element and empty ones last. There are (3^(s-1) + 1) / 2 of them
/// for `s >= 1`.
pub fn coloring_family(s: usize) -> Vec<ColorPartitionSpec> {
    let labels: Vec<usize> = (1..=s).collect();
    enumerate_partitions(&labels)
        .into_iter()
        .filter(|p| p.len() <= 3)
        .map(|mut p| {
            p.resize(3, Vec::new());
            ColorPartitionSpec {
                b: p.pop().unwrap(),
                g: p.pop().unwrap(),
                r: p.pop().unwrap(),
            }
        })
        .collect()
}

/// Triangle `v_R, v_G, v_B` with `v_C` joined to every boundary vertex outside `C`.
pub fn coloring_enforcer(spec: &ColorPartitionSpec) -> Result<BoundariedGraph, GadgetError> {
    spec.validate()?;
    let s = spec.s();
    let mut b = GraphBuilder::new(s);
    let tri = b.add_vertices(3);
    b.add_edge(tri[0], tri[1])?;
    b.add_edge(tri[1], tri[2])?;
    b.add_edge(tri[0], tri[2])?;
    for (c, class) in spec.classes().iter().enumerate() {
        for x in 1..=s {
            if !class.contains(&x) {
                b.add_edge(tri[c], x)?;
            }
        }
    }
    Ok(BoundariedGraph::new(b.build(), (1..=s).collect())?)
}

/// Adds `t1, t2, u` with edges `v1t1, v2t2, t1t2, t1u, t2u`; returns `u`.
/// Equal colours on the inputs force `u` to that colour.
pub fn coloring_circuit(b: &mut GraphBuilder, v1: usize, v2: usize) -> usize {
    let [t1, t2, u] = [b.add_vertex(), b.add_vertex(), b.add_vertex()];
    for (x, y) in [(v1, t1), (v2, t2), (t1, t2), (t1, u), (t2, u)] {
        b.add_edge(x, y).expect("circuit vertices exist");
    }
    u
}

/// One circuit tree per non-empty class. With three classes an apex is
/// joined to the three tops; with two, both tops are joined to the ends of an
/// edge, which forces them equal; a single top is joined to a vertex of its
/// own class.
pub fn coloring_tester(spec: &ColorPartitionSpec) -> Result<BoundariedGraph, GadgetError> {
    spec.validate()?;
    let s = spec.s();
    let mut b = GraphBuilder::new(s);
    let mut tops = Vec::new();
    for class in spec.classes() {
        if let (Some(top), _) = circuit_tree(&mut b, class, coloring_circuit) {
            tops.push((top, class.iter().min().copied().unwrap()));
        }
    }
    match tops[..] {
        [(t1, _), (t2, _), (t3, _)] => {
            let apex = b.add_vertex();
            for t in [t1, t2, t3] {
                b.add_edge(apex, t)?;
            }
        }
        [(t1, _), (t2, _)] => {
            let [x, y] = [b.add_vertex(), b.add_vertex()];
            b.add_edge(x, y)?;
            for t in [t1, t2] {
                b.add_edge(t, x)?;
                b.add_edge(t, y)?;
            }
        }
        [(t1, v)] => b.add_edge(t1, v)?,
        _ => {}
    }
    Ok(BoundariedGraph::new(b.build(), (1..=s).collect())?)
}

/// Testers for every member of `family_subset`, then the enforcer of `probe`.
/// Colourable exactly when `probe` is not in the subset.
pub fn coloring_family_instance(
    family_subset: &[ColorPartitionSpec],
    probe: &ColorPartitionSpec,
) -> Result<CertifiedInstance, GadgetError> {
    probe.validate()?;
    let s = probe.s();
    for x in family_subset {
        member_check(x, s)?;
    }
    member_check(probe, s)?;
    let mut acc = BoundariedGraph::bare(s);
    for x in family_subset {
        acc = glue(&acc, &coloring_tester(x)?)?;
    }
    acc = glue(&acc, &coloring_enforcer(probe)?)?;
    let (graph, boundary) = acc.into_parts();
    let decomposition = composite_decomposition(&graph, &boundary);
    let inside = family_subset.iter().any(|x| x.same_partition(probe));
    debug_assert!(check_coloring_circuit());
    let manifest = Manifest {
        problem: Problem::Color3,
        s,
        family_subset: family_subset
            .iter()
            .map(|x| serde_json::to_value(x).unwrap())
            .collect(),
        probe: serde_json::to_value(probe).unwrap(),
        expected: Answer::Colorable(!inside),
        p_i: None,
        q: None,
        lambda: None,
        alpha: None,
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

fn member_check(x: &ColorPartitionSpec, s: usize) -> Result<(), GadgetError> {
    x.validate()?;
    if x.s() != s {
        return Err(GadgetError::NotAPartition { s });
    }
    Ok(())
}

// Proper 3-colourings of `g` extending `fixed` (vertex, colour) pairs.
fn colourings(g: &Graph, fixed: &[(usize, u8)]) -> Vec<Vec<u8>> {
    let n = g.n();
    let mut out = Vec::new();
    let mut col = vec![0u8; n + 1];
    let total = 3u32.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for slot in &mut col[1..] {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        if fixed.iter().any(|&(v, k)| col[v] != k) {
            continue;
        }
        if g.edges().iter().all(|&(u, v)| col[u] != col[v]) {
            out.push(col.clone());
        }
    }
    out
}

/// Exhaustive check of the circuit behaviour: equal input colours force the
/// output, different ones leave it free.
pub fn check_coloring_circuit() -> bool {
    // two inputs
    let mut b = GraphBuilder::new(2);
    let u = coloring_circuit(&mut b, 1, 2);
    let g = b.build();
    for c1 in 0..3u8 {
        for c2 in 0..3u8 {
            let ext = colourings(&g, &[(1, c1), (2, c2)]);
            let outs: Vec<u8> = ext.iter().map(|col| col[u]).collect();
            let ok = if c1 == c2 {
                !outs.is_empty() && outs.iter().all(|&k| k == c1)
            } else {
                (0..3).all(|k| outs.contains(&k))
            };
            if !ok {
                return false;
            }
        }
    }
    // one input paired with itself
    let mut b = GraphBuilder::new(1);
    let u = coloring_circuit(&mut b, 1, 1);
    let g = b.build();
    (0..3u8).all(|c| {
        let ext = colourings(&g, &[(1, c)]);
        !ext.is_empty() && ext.iter().all(|col| col[u] == c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_3col;
    use crate::treedepth::validate;

    fn spec(r: &[usize], g: &[usize], b: &[usize]) -> ColorPartitionSpec {
        ColorPartitionSpec::new(r.to_vec(), g.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn enforcer_s3() {
        let h = coloring_enforcer(&spec(&[1], &[2], &[3])).unwrap();
        assert_eq!(h.graph().n(), 6);
        assert_eq!(h.graph().m(), 3 + 6);
        assert!(oracle_3col(h.graph()).unwrap());
    }

    #[test]
    fn enforcer_allows_exactly_its_partition() {
        for s in 1..=5 {
            let labels: Vec<usize> = (1..=s).collect();
            for p in enumerate_partitions(&labels)
                .into_iter()
                .filter(|p| p.len() <= 3)
            {
                let mut p = p;
                p.resize(3, Vec::new());
                let x = spec(&p[0], &p[1], &p[2]);
                let h = coloring_enforcer(&x).unwrap();
                let n = h.graph().n();
                for code in 0..3u32.pow(s as u32) {
                    let mut fixed = Vec::new();
                    let mut c = code;
                    for v in 1..=s {
                        fixed.push((v, (c % 3) as u8));
                        c /= 3;
                    }
                    // partition induced by the boundary colouring
                    let mut classes = vec![Vec::new(); 3];
                    for &(v, k) in &fixed {
                        classes[k as usize].push(v);
                    }
                    let induced = spec(&classes[0], &classes[1], &classes[2]);
                    let extends = !colourings_small(h.graph(), n, &fixed).is_empty();
                    assert_eq!(extends, induced.same_partition(&x), "{x:?} {fixed:?}");
                }
            }
        }
    }

    // Only the three triangle vertices are free; check their colourings.
    fn colourings_small(g: &Graph, n: usize, fixed: &[(usize, u8)]) -> Vec<[u8; 3]> {
        let mut out = Vec::new();
        let mut col = vec![0u8; n + 1];
        for &(v, k) in fixed {
            col[v] = k;
        }
        for code in 0..27u32 {
            col[n - 2] = (code % 3) as u8;
            col[n - 1] = (code / 3 % 3) as u8;
            col[n] = (code / 9) as u8;
            if g.edges().iter().all(|&(u, v)| col[u] != col[v]) {
                out.push([col[n - 2], col[n - 1], col[n]]);
            }
        }
        out
    }

    #[test]
    fn circuit_contract() {
        assert!(check_coloring_circuit());
        let mut b = GraphBuilder::new(2);
        coloring_circuit(&mut b, 1, 2);
        let g = b.build();
        assert_eq!((g.n(), g.m()), (5, 5));
    }

    #[test]
    fn family_sizes() {
        for s in 1..=8u32 {
            assert_eq!(
                coloring_family(s as usize).len() as u64,
                3u64.pow(s - 1).div_ceil(2)
            );
        }
        assert_eq!(coloring_family(3).len(), 5);
        assert_eq!(coloring_family(3)[4], spec(&[1], &[2], &[3]));
    }

    #[test]
    fn separates_every_pair_up_to_s4() {
        for s in 1..=4 {
            let fam = coloring_family(s);
            for x in &fam {
                for y in &fam {
                    let inst = coloring_family_instance(std::slice::from_ref(x), y).unwrap();
                    let colorable =
                        crate::baseline::color3_branch(&inst.graph, &inst.decomposition).unwrap();
                    if inst.graph.n() <= crate::oracle::ORACLE_COLOR_LIMIT {
                        assert_eq!(oracle_3col(&inst.graph).unwrap(), colorable);
                    }
                    assert_eq!(colorable, x != y, "{x:?} {y:?}");
                    assert_eq!(inst.expected(), Answer::Colorable(colorable));
                    let log = s.next_power_of_two().trailing_zeros() as usize;
                    assert!(inst.decomposition.depth() <= s + 4 * log + 4);
                }
            }
        }
    }

    #[test]
    fn family_instances_s3() {
        let x = spec(&[1], &[2], &[3]);
        let empty = coloring_family_instance(&[], &x).unwrap();
        assert_eq!(empty.expected(), Answer::Colorable(true));
        assert!(oracle_3col(&empty.graph).unwrap());
        let inst = coloring_family_instance(std::slice::from_ref(&x), &x).unwrap();
        assert_eq!(inst.expected(), Answer::Colorable(false));
        assert!(!oracle_3col(&inst.graph).unwrap());
        assert_eq!(validate(&inst.graph, &inst.decomposition), Ok(()));
        // colour permutation is the same member
        let y = spec(&[3], &[1], &[2]);
        let inst = coloring_family_instance(&[y], &x).unwrap();
        assert!(!oracle_3col(&inst.graph).unwrap());
    }

    #[test]
    fn distinct_partitions_s4() {
        let fam = coloring_family(4);
        let inst = coloring_family_instance(&fam[..1], &fam[1]).unwrap();
        assert_eq!(inst.expected(), Answer::Colorable(true));
        assert!(oracle_3col(&inst.graph).unwrap());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ColorPartitionSpec::new(vec![1], vec![1], vec![2]).is_err());
        assert!(ColorPartitionSpec::new(vec![1], vec![3], vec![]).is_err());
        let three = spec(&[1], &[2], &[3]);
        let four = spec(&[1], &[2], &[3, 4]);
        assert!(coloring_family_instance(&[four], &three).is_err());
    }
}
