//! Pseudo [2,b]-factors: spanning subgraphs whose components on three or
//! more vertices have every degree in `[2, b]`, the others being single
//! edges or single vertices.

use std::collections::{BTreeSet, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("b must be at least 2, got {0}")]
    InvalidB(usize),
    #[error("edge {0} is not an edge of the graph")]
    ForeignEdge(Edge),
    #[error("component {component}: vertex {vertex} has degree {degree}, outside [2, {b}]")]
    DegreeOutOfRange {
        component: usize,
        vertex: usize,
        degree: usize,
        b: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentClass {
    Large,
    Edge,
    Vertex,
}

impl ComponentClass {
    pub fn of_size(size: usize) -> Self {
        match size {
            0 | 1 => ComponentClass::Vertex,
            2 => ComponentClass::Edge,
            _ => ComponentClass::Large,
        }
    }

    pub fn is_small(self) -> bool {
        self != ComponentClass::Large
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ComponentClass::Large => "large",
            ComponentClass::Edge => "edge",
            ComponentClass::Vertex => "vertex",
        }
    }
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub class: ComponentClass,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    /// Edge plus vertex components.
    pub small_count: usize,
    pub large_count: usize,
    pub b: usize,
}

/// A validated pseudo [2,b]-factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoFactor {
    pub b: usize,
    pub n: usize,
    pub components: Vec<Component>,
}

impl PseudoFactor {
    /// Validates `edges` as a pseudo [2,b]-factor of `g` and splits it into
    /// components ordered by smallest vertex.
    pub fn new<I>(g: &Graph, edges: I, b: usize) -> Result<Self, FactorError>
    where
        I: IntoIterator<Item = Edge>,
    {
        if b < 2 {
            return Err(FactorError::InvalidB(b));
        }
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(&e) = edges.iter().find(|e| !g.has_edge(e.lo(), e.hi())) {
            return Err(FactorError::ForeignEdge(e));
        }
        let chosen = Graph::from_edges(g.vertex_count(), edges.iter().map(|&e| e.into()))
            .expect("edges already checked against g");

        let mut components = Vec::new();
        for (idx, comp) in chosen
            .connected_components(chosen.vertices())
            .into_iter()
            .enumerate()
        {
            let class = ComponentClass::of_size(comp.len());
            if class == ComponentClass::Large {
                for v in comp.iter() {
                    let degree = chosen.degree(v);
                    if !(2..=b).contains(&degree) {
                        return Err(FactorError::DegreeOutOfRange {
                            component: idx,
                            vertex: v,
                            degree,
                            b,
                        });
                    }
                }
            }
            components.push(Component {
                class,
                vertices: comp.to_vec(),
                edges: chosen.edges_within(comp),
            });
        }
        Ok(PseudoFactor {
            b,
            n: g.vertex_count(),
            components,
        })
    }

    pub fn summary(&self) -> FactorSummary {
        let small_count = self
            .components
            .iter()
            .filter(|c| c.class.is_small())
            .count();
        FactorSummary {
            small_count,
            large_count: self.components.len() - small_count,
            b: self.b,
        }
    }

    pub fn small_count(&self) -> usize {
        self.summary().small_count
    }

    pub fn vertex_component_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.class == ComponentClass::Vertex)
            .count()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut all: Vec<Edge> = self
            .components
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .collect();
        all.sort_unstable();
        all
    }

    /// One line per component:
    /// `component <k>: class=<large|edge|vertex> vertices=[..] edges=[u-v,..]`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.components.iter().enumerate() {
            let vs: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
            let es: Vec<String> = c.edges.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(
                out,
                "component {k}: class={} vertices=[{}] edges=[{}]",
                c.class,
                vs.join(","),
                es.join(",")
            );
        }
        out
    }

    /// JSON object with `b`, `n`, `small_count` and the component list.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "b": self.b,
            "n": self.n,
            "small_count": self.small_count(),
            "components": self.components,
        })
    }
}

pub fn validate_pseudo_factor(
    g: &Graph,
    edges: &[Edge],
    b: usize,
) -> Result<FactorSummary, FactorError> {
    Ok(PseudoFactor::new(g, edges.iter().copied(), b)?.summary())
}

/// True iff every edge lies inside `vertices` and in `g`, and every vertex of
/// `vertices` has degree in `[2, b]` under `edges`.
pub fn is_2b_subgraph(g: &Graph, vertices: VertexSet, edges: &[Edge], b: usize) -> bool {
    let mut degree = vec![0usize; g.vertex_count()];
    for e in edges {
        if !vertices.contains(e.lo()) || !vertices.contains(e.hi()) || !g.has_edge(e.lo(), e.hi()) {
            return false;
        }
        degree[e.lo()] += 1;
        degree[e.hi()] += 1;
    }
    vertices.iter().all(|v| (2..=b).contains(&degree[v]))
}

/// Largest vertex set [`has_deg_range_spanning`] accepts.
pub const DEG_RANGE_LIMIT: usize = 24;

/// Whether `G[s]` has a spanning subgraph with all degrees in `[2, b]`.
/// False for `|s| < 3`.
pub fn has_deg_range_spanning(g: &Graph, s: VertexSet, b: usize) -> Result<bool> {
    Ok(deg_range_spanning_witness(g, s, b)?.is_some())
}

/// Like [`has_deg_range_spanning`], returning an edge set when one exists.
///
/// Vertices are processed in ascending degree order. At each vertex the
/// edges to later vertices are decided all at once, so after the step its
/// degree is final; a later vertex that can no longer reach degree 2 or has
/// already exceeded `b` fails the branch. States that failed are remembered
/// by (step, degrees of the remaining vertices).
pub fn deg_range_spanning_witness(g: &Graph, s: VertexSet, b: usize) -> Result<Option<Vec<Edge>>> {
    if b < 2 {
        return Err(FactorError::InvalidB(b).into());
    }
    if s.len() > DEG_RANGE_LIMIT {
        return Err(Error::Capacity {
            what: "degree-range spanning subgraph",
            size: s.len(),
            limit: DEG_RANGE_LIMIT,
        });
    }
    if s.len() < 3 {
        return Ok(None);
    }
    let degrees: Vec<usize> = s.iter().map(|v| g.degree_within(v, s)).collect();
    if degrees.iter().any(|&d| d < 2) {
        return Ok(None);
    }
    if degrees.iter().all(|&d| d <= b) {
        return Ok(Some(g.edges_within(s)));
    }

    let (sub, map) = g.induced(s);
    let k = sub.vertex_count();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&v| (sub.degree(v), v));
    let mut rank = vec![0; k];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    // forward[i]: neighbours of order[i] that come later in the order
    let forward: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| {
            let mut f: Vec<usize> = sub
                .neighbors(v)
                .iter()
                .filter(|&w| rank[w] > rank[v])
                .collect();
            f.sort_by_key(|&w| rank[w]);
            f
        })
        .collect();
    let mut search = DegSearch {
        sub: &sub,
        order: &order,
        rank: &rank,
        forward: &forward,
        b,
        degree: vec![0; k],
        chosen: Vec::new(),
        failed: HashSet::new(),
    };
    if search.step(0) {
        let mut edges: Vec<Edge> = search
            .chosen
            .iter()
            .map(|e| Edge::new(map[e.lo()], map[e.hi()]))
            .collect();
        edges.sort_unstable();
        Ok(Some(edges))
    } else {
        Ok(None)
    }
}

struct DegSearch<'a> {
    sub: &'a Graph,
    order: &'a [usize],
    rank: &'a [usize],
    forward: &'a [Vec<usize>],
    b: usize,
    degree: Vec<usize>,
    chosen: Vec<Edge>,
    failed: HashSet<(usize, Vec<u8>)>,
}

impl DegSearch<'_> {
    fn key(&self, i: usize) -> (usize, Vec<u8>) {
        (
            i,
            self.order[i..]
                .iter()
                .map(|&w| self.degree[w] as u8)
                .collect(),
        )
    }

    /// Edges `w` can still gain once every vertex before position `i` is final.
    fn potential(&self, w: usize, i: usize) -> usize {
        self.sub
            .neighbors(w)
            .iter()
            .filter(|&x| self.rank[x] >= i && x != w)
            .count()
    }

    fn step(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let key = self.key(i);
        if self.failed.contains(&key) {
            return false;
        }
        let v = self.order[i];
        let have = self.degree[v];
        let fwd_len = self.forward[i].len();
        let lo = 2usize.saturating_sub(have);
        let hi = self.b.saturating_sub(have).min(fwd_len);
        if have <= self.b && lo <= hi {
            for take in lo..=hi {
                if self.choose(i, v, 0, take, &mut Vec::with_capacity(take)) {
                    return true;
                }
            }
        }
        self.failed.insert(key);
        false
    }

    fn choose(
        &mut self,
        i: usize,
        v: usize,
        from: usize,
        left: usize,
        picked: &mut Vec<usize>,
    ) -> bool {
        let forward = self.forward;
        let fwd = &forward[i];
        if left == 0 {
            for &w in picked.iter() {
                self.degree[w] += 1;
                self.degree[v] += 1;
                self.chosen.push(Edge::new(v, w));
            }
            // every later vertex must stay within reach of [2, b]
            let feasible = self.order[i + 1..].iter().all(|&w| {
                self.degree[w] <= self.b && self.degree[w] + self.potential(w, i + 1) >= 2
            });
            if feasible && self.step(i + 1) {
                return true;
            }
            for &w in picked.iter() {
                self.degree[w] -= 1;
                self.degree[v] -= 1;
                self.chosen.pop();
            }
            return false;
        }
        for j in from..fwd.len() {
            if fwd.len() - j < left {
                break;
            }
            let w = fwd[j];
            if self.degree[w] >= self.b {
                continue;
            }
            picked.push(w);
            let ok = self.choose(i, v, j + 1, left - 1, picked);
            picked.pop();
            if ok {
                return true;
            }
        }
        false
    }
}
