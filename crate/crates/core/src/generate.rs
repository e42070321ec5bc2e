//! Seeded random instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cost::Cost;
use crate::graph::{Graph, GraphBuilder};
use crate::table::CostTable;
use crate::treedepth::TreedepthDecomposition;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random recursive tree on `1..=n` plus each other pair with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 2..=n {
        let u = rng.gen_range(1..v);
        b.add_edge(u, v).unwrap();
    }
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

/// Random recursive tree plus `extra` edges, each joining a vertex to a random
/// proper ancestor in the tree.
#[allow(clippy::needless_range_loop)]
pub fn random_tree_like<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let mut parent = vec![0usize; n + 1];
    let mut b = GraphBuilder::new(n);
    for v in 2..=n {
        parent[v] = rng.gen_range(1..v);
        b.add_edge(parent[v], v).unwrap();
    }
    for _ in 0..extra {
        if n < 3 {
            break;
        }
        let v = rng.gen_range(3..=n);
        let mut anc = Vec::new();
        let mut a = parent[parent[v]];
        while a != 0 {
            anc.push(a);
            a = parent[a];
        }
        if !anc.is_empty() {
            let a = anc[rng.gen_range(0..anc.len())];
            b.add_edge(a, v).unwrap();
        }
    }
    b.build()
}

/// Graph built around a random tree of the given depth: every vertex is
/// joined to its tree parent and to each further ancestor with probability
/// `p`. The tree is returned as the decomposition.
pub fn planted<R: Rng>(
    n: usize,
    depth: usize,
    p: f64,
    rng: &mut R,
) -> (Graph, TreedepthDecomposition) {
    assert!(n >= 1 && depth >= 1);
    let mut parent = vec![0usize; n + 1];
    let mut level = vec![0usize; n + 1];
    let mut open: Vec<usize> = vec![1];
    let mut b = GraphBuilder::new(n);
    let mut deepest = 1;
    // The first `depth` vertices form a spine so the depth is attained.
    for v in 2..=n {
        let u = if v <= depth {
            v - 1
        } else {
            open[rng.gen_range(0..open.len())]
        };
        parent[v] = u;
        level[v] = level[u] + 1;
        deepest = deepest.max(level[v] + 1);
        if level[v] + 1 < depth {
            open.push(v);
        }
        b.add_edge(u, v).unwrap();
        let mut a = parent[u];
        while a != 0 {
            if rng.gen_bool(p) {
                b.add_edge(a, v).unwrap();
            }
            a = parent[a];
        }
    }
    let t = TreedepthDecomposition::from_parents(parent[1..].to_vec()).unwrap();
    debug_assert_eq!(t.depth(), deepest);
    (b.build(), t)
}

/// `K_t` with the chain decomposition `1 → 2 → … → t`.
pub fn clique_chain(t: usize) -> (Graph, TreedepthDecomposition) {
    let mut b = GraphBuilder::new(t);
    for u in 1..=t {
        for v in u + 1..=t {
            b.add_edge(u, v).unwrap();
        }
    }
    let order: Vec<usize> = (1..=t).collect();
    (b.build(), TreedepthDecomposition::chain(&order))
}

/// Superset-monotone table with `M[S] - M[∅] <= |S|`, some entries infinite.
pub fn random_monotone_table<R: Rng>(universe: u64, rng: &mut R) -> CostTable {
    let u = universe.count_ones();
    let n = 1usize << u;
    let mut v: Vec<u32> = (0..n).map(|i| rng.gen_range(0..=i.count_ones())).collect();
    for b in 0..u {
        for i in 0..n {
            if i >> b & 1 == 1 {
                v[i] = v[i].max(v[i ^ 1 << b]);
            }
        }
    }
    // Infinite on the up-set of a few random subsets.
    let mut inf = vec![false; n];
    for _ in 0..rng.gen_range(0..3) {
        let s = rng.gen_range(1..n.max(2)) & (n - 1);
        if s != 0 {
            inf[s] = true;
        }
    }
    for b in 0..u {
        for i in 0..n {
            if i >> b & 1 == 1 && inf[i ^ 1 << b] {
                inf[i] = true;
            }
        }
    }
    let base = rng.gen_range(0..50);
    let vals: Vec<Cost> = (0..n)
        .map(|i| if inf[i] { Cost::INF } else { Cost(base + v[i]) })
        .collect();
    CostTable::from_values(universe, &vals).unwrap()
}

/// Random universe mask with `u` positions below 16.
pub fn random_universe<R: Rng>(u: u32, rng: &mut R) -> u64 {
    let mut mask = 0u64;
    while mask.count_ones() < u {
        mask |= 1 << rng.gen_range(0..16);
    }
    mask
}
