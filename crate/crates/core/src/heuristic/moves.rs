//! The exchange rewrites `F ↦ F′` tried by the improvement loop.
//!
//! Notation: `F` is the current [2,b]-subgraph, `D` a smallest component of
//! `G − F`, and the attachments are the vertices of `F` adjacent to `D`. A
//! connector between two attachments is a path whose internal vertices all
//! lie in `D`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use super::SearchState;
use crate::error::Result;
use crate::factor::is_2b_subgraph;
use crate::graph::{Edge, Graph, VertexSet};
use crate::paths::find_cycle_within;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    /// X1: `(F − e) ∪ P_ij` for an `F`-edge `e` at `u_i` or `u_j`.
    Reroute,
    /// X2: `F ∪ P_kl` when both ends have spare degree.
    Bridge,
    /// X3: `(F − e − e′) ∪ P_ij`.
    DoubleDetach,
    /// X4: `F ∪ C` for a cycle `C` inside `D`.
    AbsorbCycle,
    /// X5: `F ∪ Q ∪ C` or `(F − e) ∪ Q ∪ C`, `Q` joining an attachment to a
    /// cycle `C` of `D` through `D − C`.
    CycleAttach,
    /// X6: the loop `u x₀ P y₀ u` through two leaves of a tree `D`, possibly
    /// trading one or two `F`-edges at `u`.
    LeafLoop,
    /// X7: drop a segment of degree-2 vertices of `F`.
    SegmentDelete,
}

impl MoveKind {
    pub fn label(self) -> &'static str {
        match self {
            MoveKind::Reroute => "X1 reroute",
            MoveKind::Bridge => "X2 bridge",
            MoveKind::DoubleDetach => "X3 double-detach",
            MoveKind::AbsorbCycle => "X4 absorb-cycle",
            MoveKind::CycleAttach => "X5 cycle-attach",
            MoveKind::LeafLoop => "X6 leaf-loop",
            MoveKind::SegmentDelete => "X7 segment-delete",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeMove {
    pub kind: MoveKind,
    pub remove: Vec<Edge>,
    pub add: Vec<Edge>,
}

impl ExchangeMove {
    pub fn apply(&self, f_edges: &BTreeSet<Edge>) -> BTreeSet<Edge> {
        let mut out = f_edges.clone();
        for e in &self.remove {
            out.remove(e);
        }
        out.extend(self.add.iter().copied());
        out
    }
}

fn path_edges(path: &[usize]) -> Vec<Edge> {
    path.windows(2).map(|w| Edge::new(w[0], w[1])).collect()
}

fn edge_vertices(edges: &BTreeSet<Edge>) -> VertexSet {
    edges
        .iter()
        .fold(VertexSet::EMPTY, |acc, e| acc.with(e.lo()).with(e.hi()))
}

/// Shortest path inside `G[inside]` from a vertex of `sources` to a vertex
/// of `targets`; ties go to lower indices.
fn bfs_path(
    g: &Graph,
    sources: VertexSet,
    targets: VertexSet,
    inside: VertexSet,
) -> Option<Vec<usize>> {
    let sources = sources.intersection(inside);
    let targets = targets.intersection(inside);
    let mut parent = vec![usize::MAX; g.vertex_count()];
    let mut seen = sources;
    let mut frontier: Vec<usize> = sources.to_vec();
    while !frontier.is_empty() {
        if let Some(&hit) = frontier.iter().filter(|&&v| targets.contains(v)).min() {
            let mut path = vec![hit];
            let mut v = hit;
            while parent[v] != usize::MAX {
                v = parent[v];
                path.push(v);
            }
            path.reverse();
            return Some(path);
        }
        let mut next = Vec::new();
        for &v in &frontier {
            for w in g.neighbors(v).intersection(inside).difference(seen).iter() {
                seen.insert(w);
                parent[w] = v;
                next.push(w);
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    None
}

/// Connector `u_i … u_j` with at least one internal vertex, all in `D`.
fn connector(g: &Graph, from: usize, to: usize, d: VertexSet) -> Option<Vec<usize>> {
    let inner = bfs_path(g, g.neighbors(from), g.neighbors(to), d)?;
    let mut path = Vec::with_capacity(inner.len() + 2);
    path.push(from);
    path.extend(inner);
    path.push(to);
    Some(path)
}

struct Catalog<'a> {
    g: &'a Graph,
    state: &'a SearchState,
    b: usize,
    moves: Vec<ExchangeMove>,
    seen: HashSet<(Vec<Edge>, Vec<Edge>)>,
}

impl Catalog<'_> {
    fn push(&mut self, kind: MoveKind, mut remove: Vec<Edge>, mut add: Vec<Edge>) {
        remove.sort_unstable();
        add.sort_unstable();
        if self.seen.contains(&(remove.clone(), add.clone())) {
            return;
        }
        let mv = ExchangeMove { kind, remove, add };
        let next = mv.apply(&self.state.f_edges);
        let edges: Vec<Edge> = next.iter().copied().collect();
        if next != self.state.f_edges
            && is_2b_subgraph(self.g, edge_vertices(&next), &edges, self.b)
        {
            self.seen.insert((mv.remove.clone(), mv.add.clone()));
            self.moves.push(mv);
        }
    }

    fn f_edges_at(&self, v: usize) -> Vec<Edge> {
        self.state
            .f_edges
            .iter()
            .copied()
            .filter(|e| e.contains(v))
            .collect()
    }

    /// `remove` alternatives at `v`: nothing, each single F-edge, each pair.
    fn trades_at(&self, v: usize, max: usize) -> Vec<Vec<Edge>> {
        let at = self.f_edges_at(v);
        let mut out = vec![Vec::new()];
        if max >= 1 {
            out.extend(at.iter().map(|&e| vec![e]));
        }
        if max >= 2 {
            for (i, &e) in at.iter().enumerate() {
                for &f in &at[i + 1..] {
                    out.push(vec![e, f]);
                }
            }
        }
        out
    }

    fn absorb_and_attach(&mut self) -> Result<()> {
        let d = self.state.d;
        let Some(cycle) = find_cycle_within(self.g, d)? else {
            return Ok(());
        };
        self.push(MoveKind::AbsorbCycle, Vec::new(), cycle.edges());

        let c = cycle.vertices();
        let outside = d.difference(c);
        let c_nbrs = c
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.g.neighbors(v)));
        for &u in &self.state.attachments.clone() {
            let direct = self.g.neighbors(u).intersection(c);
            let q = if let Some(x) = direct.min() {
                vec![u, x]
            } else {
                let Some(inner) = bfs_path(self.g, self.g.neighbors(u), c_nbrs, outside) else {
                    continue;
                };
                let last = *inner.last().expect("nonempty");
                let land = self
                    .g
                    .neighbors(last)
                    .intersection(c)
                    .min()
                    .expect("target adjacent to C");
                let mut q = vec![u];
                q.extend(inner);
                q.push(land);
                q
            };
            let mut add = cycle.edges();
            add.extend(path_edges(&q));
            for remove in self.trades_at(u, 1) {
                self.push(MoveKind::CycleAttach, remove, add.clone());
            }
        }
        Ok(())
    }

    fn leaf_loops(&mut self) {
        let g = self.g;
        let d = self.state.d;
        if g.edges_within(d).len() + 1 != d.len() {
            return;
        }
        let leaves: Vec<usize> = d.iter().filter(|&v| g.degree_within(v, d) == 1).collect();
        for (i, &x0) in leaves.iter().enumerate() {
            for &y0 in &leaves[i + 1..] {
                let common = g
                    .neighbors(x0)
                    .intersection(g.neighbors(y0))
                    .intersection(self.state.f_vertices);
                if common.is_empty() {
                    continue;
                }
                let Some(tree_path) =
                    bfs_path(g, VertexSet::singleton(x0), VertexSet::singleton(y0), d)
                else {
                    continue;
                };
                for u in common.iter() {
                    let mut ring = vec![u];
                    ring.extend(&tree_path);
                    ring.push(u);
                    let add = path_edges(&ring);
                    for remove in self.trades_at(u, 2) {
                        self.push(MoveKind::LeafLoop, remove, add.clone());
                    }
                }
            }
        }
    }

    fn connectors(&mut self) -> Vec<(usize, usize, Vec<Edge>)> {
        let att = &self.state.attachments;
        let mut out = Vec::new();
        for (i, &a) in att.iter().enumerate() {
            for &c in &att[i + 1..] {
                if let Some(p) = connector(self.g, a, c, self.state.d) {
                    out.push((a, c, path_edges(&p)));
                }
            }
        }
        out
    }

    fn bridges(&mut self, conns: &[(usize, usize, Vec<Edge>)]) {
        for (a, c, p) in conns {
            if self.state.f_degree(*a) < self.b && self.state.f_degree(*c) < self.b {
                self.push(MoveKind::Bridge, Vec::new(), p.clone());
            }
        }
    }

    fn reroutes(&mut self, conns: &[(usize, usize, Vec<Edge>)]) {
        for (a, c, p) in conns {
            let mut at: Vec<Edge> = self.f_edges_at(*a);
            at.extend(self.f_edges_at(*c));
            at.sort_unstable();
            at.dedup();
            for e in at {
                self.push(MoveKind::Reroute, vec![e], p.clone());
            }
        }
    }

    fn double_detaches(&mut self, conns: &[(usize, usize, Vec<Edge>)]) {
        for (a, c, p) in conns {
            let at_a = self.f_edges_at(*a);
            let at_c = self.f_edges_at(*c);
            for &e in &at_a {
                for &f in &at_c {
                    if e != f {
                        self.push(MoveKind::DoubleDetach, vec![e, f], p.clone());
                    }
                }
            }
        }
    }

    fn segment_deletes(&mut self) {
        let state = self.state;
        let deg2: VertexSet = state
            .f_vertices
            .iter()
            .filter(|&v| state.f_degree(v) == 2)
            .collect();
        let mut segments: BTreeSet<VertexSet> = BTreeSet::new();
        for x in deg2.iter() {
            for first in self.f_edges_at(x) {
                let mut seg = VertexSet::singleton(x);
                segments.insert(seg);
                let (mut prev, mut cur) = (x, first.other(x));
                while deg2.contains(cur) && !seg.contains(cur) {
                    seg.insert(cur);
                    segments.insert(seg);
                    let next = self
                        .f_edges_at(cur)
                        .into_iter()
                        .map(|e| e.other(cur))
                        .find(|&w| w != prev)
                        .expect("degree-2 vertex has a second edge");
                    prev = cur;
                    cur = next;
                }
            }
        }
        for seg in segments {
            let remove: Vec<Edge> = state
                .f_edges
                .iter()
                .copied()
                .filter(|e| seg.contains(e.lo()) || seg.contains(e.hi()))
                .collect();
            // a closed cycle is not a segment; the rest of F must stay in F
            let kept: BTreeSet<Edge> = state
                .f_edges
                .iter()
                .copied()
                .filter(|e| !remove.contains(e))
                .collect();
            if remove.len() == seg.len() || edge_vertices(&kept) != state.f_vertices.difference(seg)
            {
                continue;
            }
            self.push(MoveKind::SegmentDelete, remove, Vec::new());
        }
    }
}

/// Every applicable rewrite of `state`, in the order they are tried:
/// X4, X5, X6, X2, X1, X3, X7. Each returned move yields a valid
/// [2,b]-subgraph different from the current one.
pub fn enumerate_moves(state: &SearchState, g: &Graph, b: usize) -> Result<Vec<ExchangeMove>> {
    let mut cat = Catalog {
        g,
        state,
        b,
        moves: Vec::new(),
        seen: HashSet::new(),
    };
    if !state.d.is_empty() {
        cat.absorb_and_attach()?;
        cat.leaf_loops();
        let conns = cat.connectors();
        cat.bridges(&conns);
        cat.reroutes(&conns);
        cat.double_detaches(&conns);
    }
    cat.segment_deletes();
    Ok(cat.moves)
}
