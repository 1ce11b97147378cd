use crate::error::Result;
use crate::graph::{Edge, Graph, VertexSet};
use crate::paths::{endpoint_cycle_within, longest_path_within, Cycle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverPart {
    Cycle(Cycle),
    Edge(Edge),
    Vertex(usize),
}

impl CoverPart {
    pub fn vertices(&self) -> VertexSet {
        match self {
            CoverPart::Cycle(c) => c.vertices(),
            CoverPart::Edge(e) => VertexSet::singleton(e.lo()).with(e.hi()),
            CoverPart::Vertex(v) => VertexSet::singleton(*v),
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        match self {
            CoverPart::Cycle(c) => c.edges(),
            CoverPart::Edge(e) => vec![*e],
            CoverPart::Vertex(_) => Vec::new(),
        }
    }

    pub fn is_small(&self) -> bool {
        !matches!(self, CoverPart::Cycle(_))
    }
}

/// Partitions `within` into vertex-disjoint cycles, edges and vertices,
/// never more than `α(G[within])` of them.
///
/// Each round takes a longest path of what is left and removes a part
/// containing an endpoint `u` together with all of `u`'s remaining
/// neighbours: the endpoint cycle if `u` has two or more, the final edge of
/// the path if it has one, `u` alone otherwise. Removing a closed
/// neighbourhood lowers α by at least one, which gives the count.
pub fn posa_cover(g: &Graph, within: VertexSet) -> Result<Vec<CoverPart>> {
    let mut rest = within;
    let mut parts = Vec::new();
    while !rest.is_empty() {
        let path = longest_path_within(g, rest)?;
        let part = if let Some(c) = endpoint_cycle_within(g, rest, &path) {
            CoverPart::Cycle(c)
        } else if path.len() >= 2 {
            CoverPart::Edge(Edge::new(path[0], path[1]))
        } else {
            CoverPart::Vertex(path[0])
        };
        rest = rest.difference(part.vertices());
        parts.push(part);
    }
    Ok(parts)
}
