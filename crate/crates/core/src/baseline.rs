//! Simple branching for 3-Coloring and Vertex Cover along a decomposition.

use std::time::Instant;

use crate::error::SolveError;
use crate::graph::Graph;
use crate::stats::{Algorithm, Answer, BoundAudit, SolveReport, SolveStats};
use crate::treedepth::{Layout, TreedepthDecomposition};

struct Color3<'a> {
    lay: &'a Layout,
    colors: Vec<u8>,
    frames: u64,
    stats: SolveStats,
}

impl Color3<'_> {
    fn rec(&mut self, x: usize) -> bool {
        let level = self.lay.level[x];
        self.frames += 1;
        self.stats.branch_nodes_visited += 1;
        self.stats.peak_recursion_depth = self.stats.peak_recursion_depth.max(self.frames);
        let adj = self.lay.anc_adj[x];
        let mut used = 0u8;
        let mut bits = adj;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            used |= 1 << self.colors[p];
        }
        let mut ok = false;
        for c in 0..3u8 {
            if used >> c & 1 == 1 {
                continue;
            }
            self.colors.truncate(level);
            self.colors.push(c);
            let lay = self.lay;
            if lay.children[x].iter().all(|&y| self.rec(y)) {
                ok = true;
                break;
            }
        }
        self.frames -= 1;
        ok
    }
}

/// Whether `g` is properly 3-colourable, by branching on colours top-down.
pub fn color3_branch(g: &Graph, t: &TreedepthDecomposition) -> Result<bool, SolveError> {
    match color3_branch_report(g, t)?.stats.answer {
        Answer::Colorable(b) => Ok(b),
        Answer::Size(_) => unreachable!(),
    }
}

pub fn color3_branch_report(
    g: &Graph,
    t: &TreedepthDecomposition,
) -> Result<SolveReport, SolveError> {
    let lay = Layout::new(g, t)?;
    let start = Instant::now();
    let mut s = Color3 {
        lay: &lay,
        colors: Vec::with_capacity(lay.depth),
        frames: 0,
        stats: SolveStats::new(Algorithm::Color3Branch),
    };
    let ok = s.rec(lay.root);
    let mut stats = s.stats;
    stats.answer = Answer::Colorable(ok);
    stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport {
        stats,
        audit: BoundAudit::default(),
    })
}

struct Vc<'a> {
    lay: &'a Layout,
    bnb: bool,
    frames: u64,
    stats: SolveStats,
}

impl Vc<'_> {
    // Smallest cover of the edges inside T_x and between T_x and its
    // ancestors, given the ancestors in `cover`.
    fn rec(&mut self, x: usize, cover: u64) -> u32 {
        let level = self.lay.level[x];
        self.frames += 1;
        self.stats.branch_nodes_visited += 1;
        self.stats.peak_recursion_depth = self.stats.peak_recursion_depth.max(self.frames);
        let lay = self.lay;
        let children = &lay.children[x];

        let mut best = u32::MAX;
        if lay.anc_adj[x] & !cover == 0 {
            best = children.iter().map(|&y| self.rec(y, cover)).sum();
        }
        let with = cover | 1 << level;
        let mut take = 1u32;
        for &y in children {
            if self.bnb && take >= best {
                break;
            }
            take += self.rec(y, with);
        }
        self.frames -= 1;
        best.min(take)
    }
}

/// Minimum vertex cover size by branching on each vertex top-down.
pub fn vc_branch(g: &Graph, t: &TreedepthDecomposition) -> Result<u32, SolveError> {
    Ok(vc_branch_with(g, t, false)?.size())
}

/// As [`vc_branch`]; `bnb` stops the include branch once it cannot win.
pub fn vc_branch_with(
    g: &Graph,
    t: &TreedepthDecomposition,
    bnb: bool,
) -> Result<SolveReport, SolveError> {
    let lay = Layout::new(g, t)?;
    let start = Instant::now();
    let mut s = Vc {
        lay: &lay,
        bnb,
        frames: 0,
        stats: SolveStats::new(Algorithm::VcBranch),
    };
    let size = s.rec(lay.root, 0);
    let mut stats = s.stats;
    stats.answer = Answer::Size(size);
    stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport {
        stats,
        audit: BoundAudit::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treedepth::dfs_decomposition;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i + 1, (i + 1) % 5 + 1));
            e.push((i + 1, i + 6));
            e.push((i + 6, (i + 2) % 5 + 6));
        }
        Graph::from_edges(10, e).unwrap()
    }

    fn col(g: &Graph) -> bool {
        color3_branch(g, &dfs_decomposition(g).unwrap()).unwrap()
    }

    fn vc(g: &Graph) -> u32 {
        let t = dfs_decomposition(g).unwrap();
        let a = vc_branch(g, &t).unwrap();
        assert_eq!(vc_branch_with(g, &t, true).unwrap().size(), a);
        a
    }

    #[test]
    fn coloring_examples() {
        assert!(col(&complete(3)));
        assert!(!col(&complete(4)));
        assert!(col(&cycle(5)));
        assert!(col(&petersen()));
    }

    #[test]
    fn vc_examples() {
        assert_eq!(vc(&complete(2)), 1);
        assert_eq!(vc(&cycle(4)), 2);
        assert_eq!(vc(&petersen()), 6);
    }

    #[test]
    fn bnb_visits_no_more_nodes() {
        let g = petersen();
        let t = dfs_decomposition(&g).unwrap();
        let plain = vc_branch_with(&g, &t, false).unwrap();
        let pruned = vc_branch_with(&g, &t, true).unwrap();
        assert!(pruned.stats.branch_nodes_visited <= plain.stats.branch_nodes_visited);
    }
}
