//! Fixed inputs shared by the benchmarks.

use tdsolve_core::generate::{
    clique_chain, random_monotone_table, random_tree_like, random_universe, rng,
};
use tdsolve_core::{dfs_decomposition, CostTable, Graph, TreedepthDecomposition};

/// Seeded tree-like graphs on `n` vertices with their DFS decompositions.
pub fn tree_like(count: usize, n: usize, seed: u64) -> Vec<(Graph, TreedepthDecomposition)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let g = random_tree_like(n, n / 2, &mut r);
            let t = dfs_decomposition(&g).expect("generated graphs are connected");
            (g, t)
        })
        .collect()
}

/// `K_t` with chain decompositions for each `t` in the range.
pub fn clique_chains(
    ts: std::ops::RangeInclusive<usize>,
) -> Vec<(usize, Graph, TreedepthDecomposition)> {
    ts.map(|t| {
        let (g, d) = clique_chain(t);
        (t, g, d)
    })
    .collect()
}

/// A pair of random monotone tables over a common universe of size `u`.
pub fn table_pair(u: u32, seed: u64) -> (CostTable, CostTable) {
    let mut r = rng(seed);
    let universe = random_universe(u, &mut r);
    (
        random_monotone_table(universe, &mut r),
        random_monotone_table(universe, &mut r),
    )
}
