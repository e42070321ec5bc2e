use std::fmt::Write as _;

use thiserror::Error;

use crate::error::{GraphError, ParseError, SolveError};
use crate::graph::Graph;

/// Why a parent array is not a treedepth decomposition of a graph.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("parent array has length {found}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("parent {parent} of vertex {vertex} is out of range")]
    ParentOutOfRange { vertex: usize, parent: usize },
    #[error("no root (every vertex has a parent)")]
    NoRoot,
    #[error("two roots: {first} and {second}")]
    MultipleRoots { first: usize, second: usize },
    #[error("vertex {vertex} lies on a parent cycle")]
    Cycle { vertex: usize },
    #[error("edge {{{u},{v}}} joins vertices that are not ancestor-related")]
    NotAncestral { u: usize, v: usize },
    #[error("stated depth {stated} differs from actual depth {actual}")]
    DepthMismatch { stated: usize, actual: usize },
}

/// Rooted tree over the vertices, given by a parent array (0 marks the root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthDecomposition {
    parent: Vec<usize>,
    depth: usize,
}

impl TreedepthDecomposition {
    /// Checks the tree structure and computes the depth.
    pub fn from_parents(parent: Vec<usize>) -> Result<Self, Violation> {
        let levels = tree_levels(&parent)?;
        let depth = levels.iter().skip(1).map(|l| l + 1).max().unwrap_or(0);
        Ok(TreedepthDecomposition { parent, depth })
    }

    /// Stores `parent` and `depth` as given; see [`validate`].
    pub fn from_raw(parent: Vec<usize>, depth: usize) -> Self {
        TreedepthDecomposition { parent, depth }
    }

    /// Single path `order[0]` (root) down to the last entry.
    pub fn chain(order: &[usize]) -> Self {
        let n = order.len();
        let mut parent = vec![0; n];
        for w in order.windows(2) {
            parent[w[1] - 1] = w[0];
        }
        TreedepthDecomposition { parent, depth: n }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Parent of `v`, `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v - 1] {
            0 => None,
            p => Some(p),
        }
    }

    /// The raw array; entry `i` is the parent of vertex `i + 1`.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(|&p| p == 0).map(|i| i + 1)
    }

    /// Children of every vertex, ascending. Index 0 is unused.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.n() + 1];
        for (i, &p) in self.parent.iter().enumerate() {
            if p != 0 && p <= self.n() {
                ch[p].push(i + 1);
            }
        }
        ch
    }
}

/// Level of every vertex (root = 0), index 0 unused.
fn tree_levels(parent: &[usize]) -> Result<Vec<usize>, Violation> {
    let n = parent.len();
    let mut root = None;
    for (i, &p) in parent.iter().enumerate() {
        let v = i + 1;
        if p > n || p == v {
            return Err(Violation::ParentOutOfRange {
                vertex: v,
                parent: p,
            });
        }
        if p == 0 {
            if let Some(first) = root {
                return Err(Violation::MultipleRoots { first, second: v });
            }
            root = Some(v);
        }
    }
    let root = root.ok_or(Violation::NoRoot)?;
    let mut children = vec![Vec::new(); n + 1];
    for (i, &p) in parent.iter().enumerate() {
        if p != 0 {
            children[p].push(i + 1);
        }
    }
    let mut level = vec![usize::MAX; n + 1];
    level[0] = 0;
    level[root] = 0;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &c in &children[v] {
            level[c] = level[v] + 1;
            stack.push(c);
        }
    }
    if let Some(v) = (1..=n).find(|&v| level[v] == usize::MAX) {
        return Err(Violation::Cycle { vertex: v });
    }
    Ok(level)
}

/// Checks that `t` is a treedepth decomposition of `g` with the depth it states.
pub fn validate(g: &Graph, t: &TreedepthDecomposition) -> Result<(), Violation> {
    if t.n() != g.n() {
        return Err(Violation::LengthMismatch {
            expected: g.n(),
            found: t.n(),
        });
    }
    let level = tree_levels(&t.parent)?;
    let (tin, tout) = euler_times(t);
    let is_anc = |a: usize, b: usize| tin[a] <= tin[b] && tout[b] <= tout[a];
    for (u, v) in g.edges() {
        if !is_anc(u, v) && !is_anc(v, u) {
            return Err(Violation::NotAncestral { u, v });
        }
    }
    let actual = level.iter().skip(1).map(|l| l + 1).max().unwrap_or(0);
    if actual != t.depth {
        return Err(Violation::DepthMismatch {
            stated: t.depth,
            actual,
        });
    }
    Ok(())
}

// Entry/exit times of an iterative DFS; assumes a valid tree.
fn euler_times(t: &TreedepthDecomposition) -> (Vec<usize>, Vec<usize>) {
    let n = t.n();
    let children = t.children();
    let mut tin = vec![0; n + 1];
    let mut tout = vec![0; n + 1];
    let Some(root) = t.root() else {
        return (tin, tout);
    };
    let mut clock = 0;
    let mut stack = vec![(root, 0usize)];
    tin[root] = clock;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < children[v].len() {
            let c = children[v][*i];
            *i += 1;
            clock += 1;
            tin[c] = clock;
            stack.push((c, 0));
        } else {
            clock += 1;
            tout[v] = clock;
            stack.pop();
        }
    }
    (tin, tout)
}

/// Ancestors of `x`, root first, excluding `x`.
pub fn root_path(t: &TreedepthDecomposition, x: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = t.parent(x);
    while let Some(p) = cur {
        if out.len() > t.n() {
            break;
        }
        out.push(p);
        cur = t.parent(p);
    }
    out.reverse();
    out
}

/// DFS tree from the lowest vertex, visiting neighbours in ascending order.
pub fn dfs_decomposition(g: &Graph) -> Result<TreedepthDecomposition, GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut parent = vec![0usize; n];
    let mut seen = vec![false; n + 1];
    let mut depth = 1;
    seen[1] = true;
    let mut stack = vec![(1usize, 0usize)];
    let mut visited = 1;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        let nb = g.neighbors(v);
        if *i < nb.len() {
            let w = nb[*i];
            *i += 1;
            if !seen[w] {
                seen[w] = true;
                visited += 1;
                parent[w - 1] = v;
                stack.push((w, 0));
                depth = depth.max(stack.len());
            }
        } else {
            stack.pop();
        }
    }
    if visited != n {
        return Err(GraphError::Disconnected);
    }
    Ok(TreedepthDecomposition { parent, depth })
}

/// Largest graph accepted by [`exact_treedepth_small`].
pub const EXACT_TREEDEPTH_LIMIT: usize = 12;

/// Exact treedepth by the recurrence `td(G) = 1 + min_v td(G - v)` over
/// connected `G`, maximised over components.
pub fn exact_treedepth_small(g: &Graph) -> Result<usize, SolveError> {
    let n = g.n();
    if n > EXACT_TREEDEPTH_LIMIT {
        return Err(SolveError::TooLarge {
            n,
            limit: EXACT_TREEDEPTH_LIMIT,
        });
    }
    let adj: Vec<u32> = (1..=n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << (w - 1)))
        .collect();
    let mut memo = vec![0u8; 1 << n];
    Ok(td_rec(&adj, (1u32 << n) - 1, &mut memo) as usize)
}

fn components(adj: &[u32], set: u32) -> Vec<u32> {
    let mut rest = set;
    let mut out = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & set & !comp;
            comp |= new;
            frontier |= new;
        }
        rest &= !comp;
        out.push(comp);
    }
    out
}

fn td_rec(adj: &[u32], set: u32, memo: &mut [u8]) -> u8 {
    if set == 0 {
        return 0;
    }
    if memo[set as usize] != 0 {
        return memo[set as usize];
    }
    let comps = components(adj, set);
    let val = if comps.len() > 1 {
        comps
            .iter()
            .map(|&c| td_rec(adj, c, memo))
            .max()
            .unwrap_or(0)
    } else {
        let mut best = u8::MAX;
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            best = best.min(1 + td_rec(adj, set & !(1 << v), memo));
        }
        best
    };
    memo[set as usize] = val;
    val
}

/// Reads the `.td` format: `c` comments, a `s td n depth` header, then one
/// parent id per line. Tree structure is checked later by [`validate`].
pub fn parse_decomposition(text: &str) -> Result<TreedepthDecomposition, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut parent = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        if first.starts_with('c') {
            continue;
        }
        let Some((n, _)) = header else {
            if first != "s" || toks.next() != Some("td") {
                return Err(ParseError::new(line, "expected header `s td <n> <depth>`"));
            }
            let mut num = |what: &str| -> Result<usize, ParseError> {
                let tok = toks
                    .next()
                    .ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
                tok.parse()
                    .map_err(|_| ParseError::new(line, format!("invalid {what} `{tok}`")))
            };
            let n = num("vertex count")?;
            let depth = num("depth")?;
            if toks.next().is_some() {
                return Err(ParseError::new(line, "trailing tokens in header"));
            }
            header = Some((n, depth));
            continue;
        };
        let p: usize = first
            .parse()
            .map_err(|_| ParseError::new(line, format!("invalid parent `{first}`")))?;
        if toks.next().is_some() {
            return Err(ParseError::new(line, "trailing tokens after parent"));
        }
        if parent.len() == n {
            return Err(ParseError::new(line, "more parent lines than vertices"));
        }
        if p > n {
            return Err(ParseError::new(line, format!("parent {p} out of range")));
        }
        parent.push(p);
    }
    let (n, depth) =
        header.ok_or_else(|| ParseError::new(0, "missing header `s td <n> <depth>`"))?;
    if parent.len() != n {
        return Err(ParseError::new(
            text.lines().count(),
            format!("expected {n} parent lines, found {}", parent.len()),
        ));
    }
    Ok(TreedepthDecomposition { parent, depth })
}

pub fn write_decomposition(t: &TreedepthDecomposition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "s td {} {}", t.n(), t.depth());
    for p in &t.parent {
        let _ = writeln!(out, "{p}");
    }
    out
}

/// Widest root path the bitmask solvers can index.
pub const MAX_DEPTH: usize = 64;

/// Per-vertex indexing of a validated decomposition, shared by the solvers.
///
/// All vectors are indexed by vertex id (index 0 unused). Ancestor sets are
/// bitmasks over depth positions.
#[derive(Clone, Debug)]
pub struct Layout {
    pub root: usize,
    pub depth: usize,
    pub level: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    /// Ancestors adjacent to the vertex.
    pub anc_adj: Vec<u64>,
    /// Ancestors adjacent to some vertex of the subtree.
    pub reach: Vec<u64>,
    /// Vertices in preorder.
    pub preorder: Vec<usize>,
}

impl Layout {
    pub fn new(g: &Graph, t: &TreedepthDecomposition) -> Result<Self, SolveError> {
        validate(g, t)?;
        if t.depth() > MAX_DEPTH {
            return Err(SolveError::DepthTooLarge {
                depth: t.depth(),
                limit: MAX_DEPTH,
            });
        }
        let n = g.n();
        let root = t.root().ok_or(Violation::NoRoot)?;
        let children = t.children();
        let mut level = vec![0; n + 1];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            preorder.push(v);
            for &c in children[v].iter().rev() {
                level[c] = level[v] + 1;
                stack.push(c);
            }
        }
        let mut anc_adj = vec![0u64; n + 1];
        for (u, v) in g.edges() {
            // One endpoint is an ancestor of the other.
            let (hi, lo) = if level[u] < level[v] { (u, v) } else { (v, u) };
            anc_adj[lo] |= 1 << level[hi];
        }
        let mut reach = vec![0u64; n + 1];
        for &v in preorder.iter().rev() {
            let mut r = anc_adj[v];
            for &c in &children[v] {
                r |= reach[c];
            }
            reach[v] = r & low_bits(level[v]);
        }
        Ok(Layout {
            root,
            depth: t.depth(),
            level,
            children,
            anc_adj,
            reach,
            preorder,
        })
    }

    pub fn n(&self) -> usize {
        self.level.len() - 1
    }
}

/// Mask with the lowest `k` bits set.
pub fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    pub(crate) fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i + 1, (i + 1) % 5 + 1));
            e.push((i + 1, i + 6));
            e.push((i + 6, (i + 2) % 5 + 6));
        }
        Graph::from_edges(10, e).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (2..=leaves + 1).map(|v| (1, v))).unwrap()
    }

    #[test]
    fn validate_chain_on_path() {
        let t = TreedepthDecomposition::from_parents(vec![0, 1, 2]).unwrap();
        assert_eq!(t.depth(), 3);
        assert_eq!(validate(&path(3), &t), Ok(()));
    }

    #[test]
    fn validate_rejects_adjacent_siblings() {
        let k3 = complete(3);
        let t = TreedepthDecomposition::from_parents(vec![0, 1, 1]).unwrap();
        assert_eq!(
            validate(&k3, &t),
            Err(Violation::NotAncestral { u: 2, v: 3 })
        );
    }

    #[test]
    fn validate_star() {
        let t = TreedepthDecomposition::from_parents(vec![0, 1, 1, 1, 1]).unwrap();
        assert_eq!(t.depth(), 2);
        assert_eq!(validate(&star(4), &t), Ok(()));
    }

    #[test]
    fn validate_structure_errors() {
        let g = path(3);
        let t = TreedepthDecomposition::from_raw(vec![0, 1], 2);
        assert!(matches!(
            validate(&g, &t),
            Err(Violation::LengthMismatch { .. })
        ));
        let t = TreedepthDecomposition::from_raw(vec![0, 0, 2], 2);
        assert_eq!(
            validate(&g, &t),
            Err(Violation::MultipleRoots {
                first: 1,
                second: 2
            })
        );
        let t = TreedepthDecomposition::from_raw(vec![3, 1, 2], 3);
        assert_eq!(validate(&g, &t), Err(Violation::NoRoot));
        let t = TreedepthDecomposition::from_raw(vec![0, 3, 2], 3);
        assert!(matches!(validate(&g, &t), Err(Violation::Cycle { .. })));
        let t = TreedepthDecomposition::from_raw(vec![0, 1, 2], 4);
        assert_eq!(
            validate(&g, &t),
            Err(Violation::DepthMismatch {
                stated: 4,
                actual: 3
            })
        );
    }

    #[test]
    fn root_path_examples() {
        let chain = TreedepthDecomposition::from_parents(vec![0, 1, 2]).unwrap();
        assert!(root_path(&chain, 1).is_empty());
        assert_eq!(root_path(&chain, 3), vec![1, 2]);
        let st = TreedepthDecomposition::from_parents(vec![0, 1, 1, 1]).unwrap();
        assert_eq!(root_path(&st, 4), vec![1]);
    }

    #[test]
    fn dfs_examples() {
        let t = dfs_decomposition(&complete(3)).unwrap();
        assert_eq!(t.depth(), 3);
        let t = dfs_decomposition(&path(5)).unwrap();
        assert_eq!(t.parents(), &[0, 1, 2, 3, 4]);
        assert_eq!(t.depth(), 5);
        let p = petersen();
        let t = dfs_decomposition(&p).unwrap();
        assert_eq!(validate(&p, &t), Ok(()));
        let disc = Graph::from_edges(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(dfs_decomposition(&disc), Err(GraphError::Disconnected));
    }

    #[test]
    fn exact_treedepth_examples() {
        assert_eq!(exact_treedepth_small(&Graph::empty(1)).unwrap(), 1);
        assert_eq!(exact_treedepth_small(&path(4)).unwrap(), 3);
        assert_eq!(exact_treedepth_small(&complete(4)).unwrap(), 4);
        assert_eq!(exact_treedepth_small(&path(7)).unwrap(), 3);
        assert!(exact_treedepth_small(&path(13)).is_err());
    }

    #[test]
    fn td_file_round_trip() {
        let t = TreedepthDecomposition::from_parents(vec![0, 1, 1, 2]).unwrap();
        let text = write_decomposition(&t);
        assert_eq!(text, "s td 4 3\n0\n1\n1\n2\n");
        assert_eq!(parse_decomposition(&format!("c hi\n{text}")).unwrap(), t);
        assert!(parse_decomposition("s td 2 2\n0\n").is_err());
        assert!(parse_decomposition("s td 2 2\n0\n5\n").is_err());
        assert!(parse_decomposition("p td 2 2\n").is_err());
    }

    #[test]
    fn layout_masks() {
        // path 1-2-3 as a chain plus edge 1-3
        let g = Graph::from_edges(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let t = TreedepthDecomposition::chain(&[1, 2, 3]);
        let l = Layout::new(&g, &t).unwrap();
        assert_eq!(l.level, vec![0, 0, 1, 2]);
        assert_eq!(l.anc_adj[3], 0b11);
        assert_eq!(l.reach[3], 0b11);
        assert_eq!(l.reach[2], 0b1);
        assert_eq!(l.reach[1], 0);
    }
}
