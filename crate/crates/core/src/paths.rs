//! Longest paths and the cycle closed at a longest-path endpoint.

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

/// Largest vertex set [`longest_path_within`] accepts. The search keeps one
/// endpoint bitmask per visited subset, so memory is `4 * 2^limit` bytes.
pub const LONGEST_PATH_LIMIT: usize = 20;

pub fn longest_path(g: &Graph) -> Result<Vec<usize>> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    longest_path_within(g, g.vertices())
}

/// A path of maximum vertex count in the subgraph induced by `within`.
/// Empty only when `within` is.
///
/// Exhaustive DFS from every start vertex. A branch is cut when the vertices
/// still reachable from its endpoint cannot lift it above the incumbent, and
/// every (visited set, endpoint) state is expanded at most once.
pub fn longest_path_within(g: &Graph, within: VertexSet) -> Result<Vec<usize>> {
    let k = within.len();
    if k > LONGEST_PATH_LIMIT {
        return Err(Error::Capacity {
            what: "longest path",
            size: k,
            limit: LONGEST_PATH_LIMIT,
        });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let (sub, map) = g.induced(within);
    let ceiling = sub
        .connected_components(sub.vertices())
        .iter()
        .map(|c| c.len())
        .max()
        .unwrap_or(0);
    let mut dfs = PathSearch {
        g: &sub,
        expanded: vec![0u32; 1 << k],
        path: Vec::with_capacity(k),
        best: Vec::new(),
        ceiling,
    };
    for start in 0..k {
        if dfs.best.len() == ceiling {
            break;
        }
        dfs.path.push(start);
        dfs.extend(VertexSet::singleton(start), start);
        dfs.path.pop();
    }
    Ok(dfs.best.into_iter().map(|v| map[v]).collect())
}

struct PathSearch<'a> {
    g: &'a Graph,
    expanded: Vec<u32>,
    path: Vec<usize>,
    best: Vec<usize>,
    ceiling: usize,
}

impl PathSearch<'_> {
    fn extend(&mut self, visited: VertexSet, end: usize) {
        if self.path.len() > self.best.len() {
            self.best.clone_from(&self.path);
        }
        if self.best.len() == self.ceiling {
            return;
        }
        let slot = &mut self.expanded[visited.bits() as usize];
        if *slot >> end & 1 == 1 {
            return;
        }
        *slot |= 1 << end;

        let free = self.g.vertices().difference(visited);
        let reach = self.g.reachable(end, free.with(end));
        if self.path.len() + reach.len() - 1 <= self.best.len() {
            return;
        }
        for next in self.g.neighbors(end).intersection(free).iter() {
            self.path.push(next);
            self.extend(visited.with(next), next);
            self.path.pop();
            if self.best.len() == self.ceiling {
                return;
            }
        }
    }
}

/// A cycle given by its vertices in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub order: Vec<usize>,
}

impl Cycle {
    pub fn vertices(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let k = self.order.len();
        (0..k)
            .map(|i| Edge::new(self.order[i], self.order[(i + 1) % k]))
            .collect()
    }
}

/// Closes a cycle at an endpoint `u` of `path`: the path segment from `u` to
/// its farthest neighbour `v` on the path, plus the edge `uv`. Neighbours are
/// taken inside `within`.
///
/// The endpoint must have every neighbour on the path (true for a longest
/// path) and at least two of them; the first endpoint, then the last, is
/// tried. `None` when neither qualifies.
pub fn endpoint_cycle_within(g: &Graph, within: VertexSet, path: &[usize]) -> Option<Cycle> {
    let on_path: VertexSet = path.iter().copied().collect();
    let try_from = |seq: &mut dyn Iterator<Item = usize>| -> Option<Cycle> {
        let seq: Vec<usize> = seq.collect();
        let u = *seq.first()?;
        let nbrs = g.neighbors(u).intersection(within);
        if nbrs.len() < 2 || !nbrs.is_subset(on_path) {
            return None;
        }
        let far = seq.iter().rposition(|&x| nbrs.contains(x))?;
        let order = seq[..=far].to_vec();
        debug_assert!(order.len() >= 3);
        debug_assert!(nbrs.with(u).is_subset(order.iter().copied().collect()));
        Some(Cycle { order })
    };
    try_from(&mut path.iter().copied()).or_else(|| try_from(&mut path.iter().rev().copied()))
}

pub fn endpoint_cycle(g: &Graph, path: &[usize]) -> Option<Cycle> {
    endpoint_cycle_within(g, g.vertices(), path)
}

/// A cycle inside `within`, if the induced subgraph has one: strip vertices
/// of degree at most one, then close a cycle on a longest path of the
/// remaining 2-core.
pub fn find_cycle_within(g: &Graph, within: VertexSet) -> Result<Option<Cycle>> {
    let core = two_core(g, within);
    if core.is_empty() {
        return Ok(None);
    }
    let path = longest_path_within(g, core)?;
    Ok(endpoint_cycle_within(g, core, &path))
}

pub fn two_core(g: &Graph, within: VertexSet) -> VertexSet {
    let mut core = within;
    loop {
        let weak: VertexSet = core
            .iter()
            .filter(|&v| g.degree_within(v, core) < 2)
            .collect();
        if weak.is_empty() {
            return core;
        }
        core = core.difference(weak);
    }
}

pub fn is_path(g: &Graph, path: &[usize]) -> bool {
    let set: VertexSet = path.iter().copied().collect();
    set.len() == path.len() && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}
