//! Simple undirected graphs on dense vertex indices `0..n`, at most
//! [`MAX_VERTICES`] of them, with bitset adjacency.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every vertex set is a single machine word.
pub const MAX_VERTICES: usize = 64;

/// A subset of `0..MAX_VERTICES`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iteration over the members of a [`VertexSet`].
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> usize {
        self.0
    }

    pub fn hi(self) -> usize {
        self.1
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl From<(usize, usize)> for Edge {
    fn from((u, v): (usize, usize)) -> Self {
        Edge::new(u, v)
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> Self {
        (e.0, e.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "graph vertex count",
                size: n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            edges: Vec::new(),
        })
    }

    /// Builds a graph from a list of pairs. Duplicates collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v, 0)?;
        }
        g.edges.sort_unstable();
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.edges.push(Edge::new(u, v));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degree_within(&self, v: usize, within: VertexSet) -> usize {
        self.adj[v].intersection(within).len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Edges of the subgraph induced by `within`.
    pub fn edges_within(&self, within: VertexSet) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| within.contains(e.lo()) && within.contains(e.hi()))
            .collect()
    }

    pub fn min_degree(&self) -> Result<usize> {
        (0..self.n)
            .map(|v| self.degree(v))
            .min()
            .ok_or(Error::EmptyGraph)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|a| a.is_empty())
    }

    /// The subgraph induced by `within`, relabelled to `0..|within|` in
    /// ascending order, together with the map from new to old labels.
    pub fn induced(&self, within: VertexSet) -> (Graph, Vec<usize>) {
        let map = within.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let k = map.len();
        let mut sub = Graph {
            n: k,
            adj: vec![VertexSet::EMPTY; k],
            edges: Vec::new(),
        };
        for e in self.edges_within(within) {
            let (a, b) = (index[e.lo()], index[e.hi()]);
            sub.adj[a].insert(b);
            sub.adj[b].insert(a);
            sub.edges.push(Edge::new(a, b));
        }
        sub.edges.sort_unstable();
        (sub, map)
    }

    /// Vertices reachable from `start` inside `within` (including `start`).
    pub fn reachable(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Partition of `within` into the vertex sets of the connected
    /// components of the induced subgraph, ordered by smallest member.
    pub fn connected_components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let comp = self.reachable(v, rest);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    /// Disjoint union, `other` relabelled to follow `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        Graph::from_edges(
            self.n + other.n,
            self.edges
                .iter()
                .map(|e| (e.lo(), e.hi()))
                .chain(other.edges.iter().map(|e| (e.lo() + shift, e.hi() + shift))),
        )
    }

    /// Edge-list text: a header `n <count>` followed by one `u v` line per
    /// edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.lo(), e.hi()));
        }
        out
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("e {} {}\n", e.lo() + 1, e.hi() + 1));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

fn dimacs_data(line: &str) -> &str {
    let line = line.trim();
    if line.starts_with('c') {
        ""
    } else {
        line.split('#').next().unwrap_or("").trim()
    }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("expected a vertex index, found {tok:?}")))
}

/// Parses the edge-list format: `#` starts a comment, the first data line
/// must be `n <count>`, every further data line is `u v` with `u != v`.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match (&mut graph, toks.as_slice()) {
            (None, ["n", count]) => {
                let n = parse_index(count, line_no)?;
                graph = Some(Graph::empty(n)?);
            }
            (None, _) => {
                return Err(Error::parse(line_no, "expected header line \"n <count>\""));
            }
            (Some(_), ["n", _]) => {
                return Err(Error::parse(line_no, "duplicate header line"));
            }
            (Some(g), [u, v]) => {
                let (u, v) = (parse_index(u, line_no)?, parse_index(v, line_no)?);
                g.add_edge(u, v, line_no).map_err(|e| match e {
                    Error::VertexOutOfRange { vertex, n } => {
                        Error::parse(line_no, format!("vertex {vertex} out of range for n = {n}"))
                    }
                    other => other,
                })?;
            }
            (Some(_), _) => {
                return Err(Error::parse(
                    line_no,
                    format!("malformed edge line {line:?}"),
                ));
            }
        }
    }
    let mut g = graph.ok_or_else(|| Error::parse(0, "missing header line \"n <count>\""))?;
    g.edges.sort_unstable();
    Ok(g)
}

/// Parses DIMACS: `c` comment lines, a `p edge <n> <m>` header, then
/// `e <u> <v>` lines with 1-based vertices.
pub fn load_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = dimacs_data(raw);
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match (&mut graph, toks.as_slice()) {
            (None, ["p", "edge" | "col", n, _m]) => {
                graph = Some(Graph::empty(parse_index(n, line_no)?)?);
            }
            (None, _) => return Err(Error::parse(line_no, "expected \"p edge <n> <m>\" header")),
            (Some(_), ["p", ..]) => return Err(Error::parse(line_no, "duplicate problem line")),
            (Some(g), ["e", u, v]) => {
                let (u, v) = (parse_index(u, line_no)?, parse_index(v, line_no)?);
                if u == 0 || v == 0 || u > g.n || v > g.n {
                    return Err(Error::parse(
                        line_no,
                        format!("vertex out of range 1..={}", g.n),
                    ));
                }
                g.add_edge(u - 1, v - 1, line_no)?;
            }
            (Some(_), _) => {
                return Err(Error::parse(line_no, format!("malformed line {line:?}")));
            }
        }
    }
    let mut g = graph.ok_or_else(|| Error::parse(0, "missing problem line"))?;
    g.edges.sort_unstable();
    Ok(g)
}

/// Picks the parser by content: DIMACS if the first data line starts with
/// `p` or `c`, edge-list otherwise.
pub fn load_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(|l| l.trim())
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.starts_with('p') || l.starts_with("c ") || l == "c" => load_dimacs(text),
        _ => load_edge_list(text),
    }
}
