//! Bottom-up Dominating Set DP keeping every root-path state.
//!
//! Node `x` at level `L` stores one slice per `D ⊆ P_x`, each over the
//! universe `P_x \ D`; a slice entry `S` is the fewest vertices of `T_x` that
//! dominate `T_x` and `S` with `D` in the solution. A node therefore holds
//! `Σ_D 2^{L-|D|} = 3^L` entries, against the `O(2^t)` of the hybrid solver.

use std::time::Instant;

use crate::error::SolveError;
use crate::graph::Graph;
use crate::hybrid::{merge, ConvMode, Meter};
use crate::stats::{Algorithm, Answer, BoundAudit, SolveReport, SolveStats};
use crate::table::{
    absorb, combine_choice, forget_vertex, lift, require_vertex, restrict, CostTable,
};
use crate::treedepth::{low_bits, Layout, TreedepthDecomposition};

/// Deepest decomposition the DP accepts (`3^19` entries per node).
pub const CLASSIC_MAX_DEPTH: usize = 20;

/// Size of a minimum dominating set by the full-state DP.
pub fn domset_classic_dp(g: &Graph, t: &TreedepthDecomposition) -> Result<u32, SolveError> {
    Ok(domset_classic_dp_report(g, t)?.size())
}

pub fn domset_classic_dp_report(
    g: &Graph,
    t: &TreedepthDecomposition,
) -> Result<SolveReport, SolveError> {
    let lay = Layout::new(g, t)?;
    if lay.depth > CLASSIC_MAX_DEPTH {
        return Err(SolveError::DepthTooLarge {
            depth: lay.depth,
            limit: CLASSIC_MAX_DEPTH,
        });
    }
    let start = Instant::now();
    let mut stats = SolveStats::new(Algorithm::ClassicDp);
    let mut meter = Meter::default();
    let mut ops = 0u64;
    let n = lay.n();
    let mut tables: Vec<Vec<CostTable>> = vec![Vec::new(); n + 1];

    for &x in lay.preorder.iter().rev() {
        let level = lay.level[x];
        let x_bit = 1u64 << level;
        let above = low_bits(level);
        let mut slices = Vec::with_capacity(1 << level);
        for d in 0..1u64 << level {
            let universe = above & !d;
            let leave = {
                let acc =
                    merge_slices(&lay, &tables, x, d, universe | x_bit, &mut meter, &mut ops)?;
                let next = if lay.anc_adj[x] & d == 0 {
                    require_vertex(&acc, level as u32)?
                } else {
                    forget_vertex(&acc, level as u32)?
                };
                meter.hold(&next);
                meter.release(&acc);
                next
            };
            let take = {
                let acc =
                    merge_slices(&lay, &tables, x, d | x_bit, universe, &mut meter, &mut ops)?;
                let free = universe & lay.anc_adj[x];
                let kept = restrict(&acc, universe & !free)?;
                let next = absorb(&kept, free)?.add_constant(1);
                meter.hold(&next);
                meter.release(&acc);
                next
            };
            let slice = combine_choice(&leave, &take)?;
            meter.hold(&slice);
            meter.release(&leave);
            meter.release(&take);
            slices.push(slice);
        }
        for k in 0..lay.children[x].len() {
            let y = lay.children[x][k];
            for s in std::mem::take(&mut tables[y]) {
                meter.release(&s);
            }
        }
        tables[x] = slices;
    }

    let ans = tables[lay.root][0].value(0);
    stats.answer = Answer::Size(ans.0);
    stats.peak_live_table_entries = meter.peak;
    stats.total_convolution_element_ops = ops;
    stats.peak_recursion_depth = 1;
    stats.branch_nodes_visited = n as u64;
    stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport {
        stats,
        audit: BoundAudit::default(),
    })
}

// Convolves the children's slices for `d`; every slice already has universe
// `universe`. Without children this is the identity over `universe`.
fn merge_slices(
    lay: &Layout,
    tables: &[Vec<CostTable>],
    x: usize,
    d: u64,
    universe: u64,
    meter: &mut Meter,
    ops: &mut u64,
) -> Result<CostTable, SolveError> {
    let children = &lay.children[x];
    let Some((&first, rest)) = children.split_first() else {
        let id = lift(&CostTable::identity(0)?, universe)?;
        meter.hold(&id);
        return Ok(id);
    };
    let mut acc = tables[first][d as usize].clone();
    meter.hold(&acc);
    for &y in rest {
        let other = tables[y][d as usize].clone();
        meter.hold(&other);
        acc = merge(acc, other, ConvMode::Fast, meter, ops)?;
    }
    debug_assert_eq!(acc.universe(), universe);
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedepth::dfs_decomposition;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i + 1, (i + 1) % 5 + 1));
            e.push((i + 1, i + 6));
            e.push((i + 6, (i + 2) % 5 + 6));
        }
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn star_k15() {
        let g = Graph::from_edges(6, (2..=6).map(|v| (1, v))).unwrap();
        let t = dfs_decomposition(&g).unwrap();
        assert_eq!(domset_classic_dp(&g, &t).unwrap(), 1);
    }

    #[test]
    fn p4() {
        let g = Graph::from_edges(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let t = dfs_decomposition(&g).unwrap();
        assert_eq!(domset_classic_dp(&g, &t).unwrap(), 2);
        let t = TreedepthDecomposition::from_parents(vec![2, 0, 2, 3]).unwrap();
        assert_eq!(domset_classic_dp(&g, &t).unwrap(), 2);
    }

    #[test]
    fn petersen_is_three() {
        let g = petersen();
        assert_eq!(
            domset_classic_dp(&g, &dfs_decomposition(&g).unwrap()).unwrap(),
            3
        );
    }

    #[test]
    fn node_holds_three_to_the_level() {
        // K4 as a chain: the deepest node has level 3 and 3^3 entries
        let mut e = Vec::new();
        for u in 1..=4 {
            for v in u + 1..=4 {
                e.push((u, v));
            }
        }
        let g = Graph::from_edges(4, e).unwrap();
        let t = TreedepthDecomposition::chain(&[1, 2, 3, 4]);
        let r = domset_classic_dp_report(&g, &t).unwrap();
        assert_eq!(r.size(), 1);
        assert!(r.stats.peak_live_table_entries >= 27);
    }
}
