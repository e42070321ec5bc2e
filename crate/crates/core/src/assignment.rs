use std::collections::BTreeMap;

use crate::cost::Cost;

/// Per-block ordered lists of `(extra_cost, child)` candidates.
///
/// A list keeps at most `l` entries (`l` = number of blocks); entries whose
/// extra cost exceeds the block size are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateLists {
    lists: Vec<Vec<(Cost, usize)>>,
    caps: Vec<u32>,
}

impl CandidateLists {
    /// Empty lists for blocks of the given sizes.
    pub fn new(block_sizes: &[u32]) -> Self {
        CandidateLists {
            lists: vec![Vec::new(); block_sizes.len()],
            caps: block_sizes.to_vec(),
        }
    }

    /// Lists taken verbatim (no cap on extra cost).
    pub fn from_lists(lists: Vec<Vec<(Cost, usize)>>) -> Self {
        let caps = vec![u32::MAX - 1; lists.len()];
        let mut out = CandidateLists { lists, caps };
        for l in &mut out.lists {
            l.sort();
        }
        out
    }

    pub fn blocks(&self) -> usize {
        self.lists.len()
    }

    pub fn list(&self, block: usize) -> &[(Cost, usize)] {
        &self.lists[block]
    }

    pub fn cap(&self, block: usize) -> u32 {
        self.caps[block]
    }

    /// Inserts a candidate, keeping the `l` smallest. Returns whether it was kept.
    pub fn insert(&mut self, block: usize, extra: Cost, child: usize) -> bool {
        if extra.is_inf() || extra.0 > self.caps[block] {
            return false;
        }
        let l = self.lists.len();
        let list = &mut self.lists[block];
        let pos = list.partition_point(|e| *e <= (extra, child));
        if pos >= l {
            return false;
        }
        list.insert(pos, (extra, child));
        list.truncate(l);
        true
    }

    pub fn total_entries(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }

    /// Distinct children referenced by any list, ascending.
    pub fn children(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.lists.iter().flatten().map(|&(_, y)| y).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}

const BIG: i64 = 1 << 40;

/// Minimum total extra cost over injective block-to-child assignments that
/// use only listed candidates; infinity if none exists.
pub fn find_min_solution(lists: &CandidateLists) -> Cost {
    let l = lists.blocks();
    if l == 0 {
        return Cost::ZERO;
    }
    if lists.lists.iter().any(Vec::is_empty) {
        return Cost::INF;
    }
    let cols: BTreeMap<usize, usize> = lists
        .children()
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let m = cols.len();
    if m < l {
        return Cost::INF;
    }
    let mut a = vec![vec![BIG; m]; l];
    for (i, list) in lists.lists.iter().enumerate() {
        for &(c, y) in list {
            let j = cols[&y];
            a[i][j] = a[i][j].min(c.0 as i64);
        }
    }
    let total = hungarian(&a);
    if total >= BIG {
        Cost::INF
    } else {
        Cost(total as u32)
    }
}

// Rectangular Hungarian algorithm (rows <= cols), potentials version.
fn hungarian(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let m = a[0].len();
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; m + 1];
    let mut p = vec![0usize; m + 1];
    let mut way = vec![0usize; m + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; m + 1];
        let mut used = vec![false; m + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=m {
                if !used[j] {
                    let cur = a[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=m {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0;
    for j in 1..=m {
        if p[j] != 0 {
            total += a[p[j] - 1][j - 1];
        }
    }
    total
}

/// Exhaustive search over assignments; used to check [`find_min_solution`].
pub fn find_min_solution_brute(lists: &CandidateLists) -> Cost {
    fn go(lists: &CandidateLists, i: usize, used: &mut Vec<usize>) -> Cost {
        if i == lists.blocks() {
            return Cost::ZERO;
        }
        let mut best = Cost::INF;
        for &(c, y) in lists.list(i) {
            if used.contains(&y) {
                continue;
            }
            used.push(y);
            best = best.min(c + go(lists, i + 1, used));
            used.pop();
        }
        best
    }
    go(lists, 0, &mut Vec::new())
}
