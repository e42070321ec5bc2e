//! Pure branching Dominating Set solver with polynomial space in the depth.
//!
//! A call `rec(x, P, D)` returns the fewest vertices of `T_x` that, together
//! with the ancestors in `D`, dominate `T_x` and the ancestors in `P`. It
//! branches on whether `x` is taken, splits the still undominated part of `P`
//! (plus `x` when it needs domination) into blocks, one per child subtree,
//! and matches blocks to children through capped candidate lists.

use std::time::Instant;

use crate::assignment::{find_min_solution, CandidateLists};
use crate::cost::Cost;
use crate::error::SolveError;
use crate::graph::Graph;
use crate::partition::for_each_mask_partition;
use crate::stats::{Algorithm, Answer, BoundAudit, SolveReport, SolveStats};
use crate::treedepth::{root_path, Layout, TreedepthDecomposition};

/// Reusable solver state for one graph and decomposition.
pub struct BranchSolver<'a> {
    lay: Layout,
    t: &'a TreedepthDecomposition,
    path: Vec<usize>,
    frames: u64,
    stats: SolveStats,
    audit: BoundAudit,
}

impl<'a> BranchSolver<'a> {
    pub fn new(g: &Graph, t: &'a TreedepthDecomposition) -> Result<Self, SolveError> {
        let lay = Layout::new(g, t)?;
        Ok(BranchSolver {
            path: Vec::with_capacity(lay.depth),
            lay,
            t,
            frames: 0,
            stats: SolveStats::new(Algorithm::Branch),
            audit: BoundAudit::default(),
        })
    }

    pub fn layout(&self) -> &Layout {
        &self.lay
    }

    /// Evaluates `rec(x, P, D)` for position masks `p` and `d` over the root
    /// path of `x`.
    pub fn domset_rec(&mut self, x: usize, p: u64, d: u64) -> Cost {
        self.path = root_path(self.t, x);
        self.rec(x, p, d)
    }

    pub fn audit(&self) -> &BoundAudit {
        &self.audit
    }

    pub fn stats(&self) -> &SolveStats {
        &self.stats
    }

    // Positions `0..=level` dominated by the ancestors in `d`.
    fn dominated(&self, level: usize, d: u64) -> u64 {
        let mut m = d;
        for (p, &v) in self.path[..=level].iter().enumerate() {
            let up = self.lay.anc_adj[v];
            if up & d != 0 {
                m |= 1 << p;
            }
            if d >> p & 1 == 1 {
                m |= up;
            }
        }
        m
    }

    fn rec(&mut self, x: usize, p: u64, d: u64) -> Cost {
        let level = self.lay.level[x];
        self.path.truncate(level);
        self.path.push(x);
        self.frames += 1;
        self.stats.branch_nodes_visited += 1;
        self.stats.peak_recursion_depth = self.stats.peak_recursion_depth.max(self.frames);
        if self.frames as usize > self.lay.depth + 1 {
            self.audit.depth_violations += 1;
        }

        let dom = self.dominated(level, d);
        let undominated = p & !dom;
        let x_bit = 1u64 << level;
        let skip = if dom & x_bit == 0 { x_bit } else { 0 };
        let leave = self.split(x, undominated | skip, d);
        let take = self.split(x, undominated & !self.lay.anc_adj[x], d | x_bit) + 1;

        self.frames -= 1;
        leave.min(take)
    }

    // Cost of dominating T_x minus x itself plus the positions `q` from the
    // children of x, with `d` in the solution.
    fn split(&mut self, x: usize, q: u64, d: u64) -> Cost {
        let children = self.lay.children[x].clone();
        if children.is_empty() {
            return if q == 0 { Cost::ZERO } else { Cost::INF };
        }
        let reachable = children.iter().fold(0, |m, &y| m | self.lay.reach[y]);
        if q & !reachable != 0 {
            return Cost::INF;
        }
        if children.len() == 1 {
            let y = children[0];
            let r = self.rec(y, q, d);
            self.path.truncate(self.lay.level[x] + 1);
            return r;
        }
        let mut baselines = Vec::with_capacity(children.len());
        let mut baseline = Cost::ZERO;
        for &y in &children {
            let b = self.rec(y, 0, d);
            baselines.push(b);
            baseline = baseline + b;
        }
        self.path.truncate(self.lay.level[x] + 1);
        if q == 0 || baseline.is_inf() {
            return baseline;
        }

        let useful = children
            .iter()
            .filter(|&&y| self.lay.reach[y] & q != 0)
            .count();
        let max_blocks = useful.min(q.count_ones() as usize);
        let mut best = Cost::INF;
        for_each_mask_partition(q, max_blocks, |blocks| {
            self.stats.partitions_enumerated += 1;
            if !self.matchable(blocks, &children) {
                return true;
            }
            let sizes: Vec<u32> = blocks.iter().map(|b| b.count_ones()).collect();
            let mut lists = CandidateLists::new(&sizes);
            let mut feasible = true;
            for (i, &block) in blocks.iter().enumerate() {
                for (k, &y) in children.iter().enumerate() {
                    if block & !self.lay.reach[y] != 0 {
                        continue;
                    }
                    let c = self.rec(y, block, d);
                    lists.insert(i, c.saturating_sub(baselines[k]), y);
                }
                if lists.list(i).is_empty() {
                    feasible = false;
                    break;
                }
            }
            self.path.truncate(self.lay.level[x] + 1);
            self.audit_lists(&lists);
            if feasible {
                best = best.min(find_min_solution(&lists));
            }
            // Extra costs are non-negative, so nothing beats zero.
            best != Cost::ZERO
        });
        baseline + best
    }

    // Whether the blocks can go to distinct children whose subtrees reach
    // every vertex of the block (augmenting paths on reach masks).
    fn matchable(&self, blocks: &[u64], children: &[usize]) -> bool {
        fn augment(
            i: usize,
            adj: &[Vec<usize>],
            seen: &mut [bool],
            owner: &mut [Option<usize>],
        ) -> bool {
            for &k in &adj[i] {
                if seen[k] {
                    continue;
                }
                seen[k] = true;
                if owner[k].is_none_or(|j| augment(j, adj, seen, owner)) {
                    owner[k] = Some(i);
                    return true;
                }
            }
            false
        }
        let adj: Vec<Vec<usize>> = blocks
            .iter()
            .map(|&b| {
                (0..children.len())
                    .filter(|&k| b & !self.lay.reach[children[k]] == 0)
                    .collect()
            })
            .collect();
        let mut owner = vec![None; children.len()];
        (0..blocks.len()).all(|i| augment(i, &adj, &mut vec![false; children.len()], &mut owner))
    }

    fn audit_lists(&mut self, lists: &CandidateLists) {
        let l = lists.blocks();
        self.audit.frames_checked += 1;
        if lists.total_entries() > l * l {
            self.audit.list_length_violations += 1;
        }
        if lists.children().len() > l * l {
            self.audit.candidate_violations += 1;
        }
        for i in 0..l {
            if lists.list(i).len() > l {
                self.audit.list_length_violations += 1;
            }
            if lists
                .list(i)
                .iter()
                .any(|&(c, _)| c.is_inf() || c.0 > lists.cap(i))
            {
                self.audit.extra_cost_violations += 1;
            }
        }
    }

    pub fn solve(mut self) -> SolveReport {
        let start = Instant::now();
        let root = self.lay.root;
        self.path.clear();
        let ans = self.rec(root, 0, 0);
        self.stats.answer = Answer::Size(ans.0);
        self.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        SolveReport {
            stats: self.stats,
            audit: self.audit,
        }
    }
}

/// Size of a minimum dominating set by pure branching.
pub fn solve_branch(g: &Graph, t: &TreedepthDecomposition) -> Result<u32, SolveError> {
    Ok(solve_branch_report(g, t)?.size())
}

pub fn solve_branch_report(
    g: &Graph,
    t: &TreedepthDecomposition,
) -> Result<SolveReport, SolveError> {
    Ok(BranchSolver::new(g, t)?.solve())
}
