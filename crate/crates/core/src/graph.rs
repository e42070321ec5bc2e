use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{GraphError, ParseError};

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    // adj[0] is unused so that vertex ids index directly.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n + 1],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.component_of(1).len() == self.n
    }

    /// Vertices reachable from `start`, sorted.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n + 1];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components of the subgraph induced by `keep`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_within(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if !keep[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if keep[w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}

/// Incremental construction of a [`Graph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds a fresh vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n
    }

    pub fn add_vertices(&mut self, k: usize) -> Vec<usize> {
        (0..k).map(|_| self.add_vertex()).collect()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w == 0 || w > self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn build(self) -> Graph {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n: self.n, adj }
    }
}

/// `S` together with all neighbours of `S`, sorted.
pub fn closed_neighborhood(g: &Graph, s: &[usize]) -> Vec<usize> {
    let mut out = BTreeSet::new();
    for &v in s {
        out.insert(v);
        out.extend(g.neighbors(v).iter().copied());
    }
    out.into_iter().collect()
}

/// Graph with an ordered boundary; label `i` is `boundary[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundariedGraph {
    graph: Graph,
    boundary: Vec<usize>,
}

impl BoundariedGraph {
    pub fn new(graph: Graph, boundary: Vec<usize>) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for &b in &boundary {
            if b == 0 || b > graph.n() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: b,
                    n: graph.n(),
                });
            }
            if !seen.insert(b) {
                return Err(GraphError::DuplicateBoundary(b));
            }
        }
        Ok(BoundariedGraph { graph, boundary })
    }

    /// `s` isolated boundary vertices and nothing else.
    pub fn bare(s: usize) -> Self {
        BoundariedGraph {
            graph: Graph::empty(s),
            boundary: (1..=s).collect(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    pub fn s(&self) -> usize {
        self.boundary.len()
    }

    pub fn into_parts(self) -> (Graph, Vec<usize>) {
        (self.graph, self.boundary)
    }
}

/// Glues `g2` onto `g1` by identifying equally labelled boundary vertices.
///
/// Vertices of `g1` keep their ids; internal vertices of `g2` are renumbered
/// to `n1 + 1..` in increasing order of their old ids.
pub fn glue(g1: &BoundariedGraph, g2: &BoundariedGraph) -> Result<BoundariedGraph, GraphError> {
    if g1.s() != g2.s() {
        return Err(GraphError::BoundaryMismatch {
            left: g1.s(),
            right: g2.s(),
        });
    }
    let n1 = g1.graph.n();
    let mut map = vec![0usize; g2.graph.n() + 1];
    for (i, &b) in g2.boundary.iter().enumerate() {
        map[b] = g1.boundary[i];
    }
    let mut next = n1;
    for v in g2.graph.vertices() {
        if map[v] == 0 {
            next += 1;
            map[v] = next;
        }
    }
    let mut b = GraphBuilder::new(next);
    for (u, v) in g1.graph.edges() {
        b.add_edge(u, v)?;
    }
    for (u, v) in g2.graph.edges() {
        b.add_edge(map[u], map[v])?;
    }
    Ok(BoundariedGraph {
        graph: b.build(),
        boundary: g1.boundary.clone(),
    })
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{tok}`")))
}

/// Reads the `.gr` format: `c` comments, a `p td n m` header, one edge per line.
///
/// The `m` of the header is not enforced; duplicate edges collapse.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut builder: Option<GraphBuilder> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(first) = toks.next() else { continue };
        if first.starts_with('c') {
            continue;
        }
        if first == "p" {
            if builder.is_some() {
                return Err(ParseError::new(line, "duplicate header"));
            }
            if toks.next() != Some("td") {
                return Err(ParseError::new(line, "expected header `p td <n> <m>`"));
            }
            let n = parse_usize(toks.next(), line, "vertex count")?;
            parse_usize(toks.next(), line, "edge count")?;
            if toks.next().is_some() {
                return Err(ParseError::new(line, "trailing tokens in header"));
            }
            builder = Some(GraphBuilder::new(n));
            continue;
        }
        let b = builder
            .as_mut()
            .ok_or_else(|| ParseError::new(line, "edge before header"))?;
        let u = parse_usize(Some(first), line, "vertex")?;
        let v = parse_usize(toks.next(), line, "vertex")?;
        if toks.next().is_some() {
            return Err(ParseError::new(line, "trailing tokens after edge"));
        }
        b.add_edge(u, v)
            .map_err(|e| ParseError::new(line, e.to_string()))?;
    }
    builder
        .map(GraphBuilder::build)
        .ok_or_else(|| ParseError::new(0, "missing header `p td <n> <m>`"))
}

/// Writes the `.gr` format with edges in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p td {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Relabels `g` canonically by the given vertex map and returns the edge set.
pub fn edge_set_under(g: &Graph, map: &BTreeMap<usize, usize>) -> BTreeSet<(usize, usize)> {
    g.edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (map[&u], map[&v]);
            (a.min(b), a.max(b))
        })
        .collect()
}
