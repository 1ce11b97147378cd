//! Exact maximum independent set by branch and bound.
//!
//! The branching vertex is a maximum-degree vertex of the candidate set:
//! either it joins the set (its neighbourhood leaves the candidates) or it
//! is discarded. Vertices of degree 0 or 1 among the candidates are taken
//! greedily, which never loses optimality. A candidate set that cannot beat
//! the incumbent even if every candidate were taken is pruned, and the
//! incumbent starts from a greedy minimum-degree solution.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest vertex set the solver accepts.
pub const INDEPENDENCE_LIMIT: usize = 48;

pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

/// A maximum independent set of `g`.
pub fn maximum_independent_set(g: &Graph) -> Result<VertexSet> {
    maximum_independent_set_within(g, g.vertices())
}

/// α of the subgraph induced by `within`.
pub fn independence_number_within(g: &Graph, within: VertexSet) -> Result<usize> {
    Ok(maximum_independent_set_within(g, within)?.len())
}

pub fn maximum_independent_set_within(g: &Graph, within: VertexSet) -> Result<VertexSet> {
    if within.len() > INDEPENDENCE_LIMIT {
        return Err(Error::Capacity {
            what: "independence number",
            size: within.len(),
            limit: INDEPENDENCE_LIMIT,
        });
    }
    let mut search = Search {
        g,
        best: greedy(g, within),
    };
    search.branch(within, VertexSet::EMPTY);
    Ok(search.best)
}

fn greedy(g: &Graph, mut cand: VertexSet) -> VertexSet {
    let mut chosen = VertexSet::EMPTY;
    while !cand.is_empty() {
        let v = cand
            .iter()
            .min_by_key(|&v| g.degree_within(v, cand))
            .expect("nonempty");
        chosen.insert(v);
        cand = cand.difference(g.neighbors(v).with(v));
    }
    chosen
}

struct Search<'a> {
    g: &'a Graph,
    best: VertexSet,
}

impl Search<'_> {
    fn branch(&mut self, mut cand: VertexSet, mut chosen: VertexSet) {
        loop {
            if chosen.len() + cand.len() <= self.best.len() {
                return;
            }
            let mut forced = None;
            let mut pivot = None;
            let mut pivot_deg = 0;
            for v in cand.iter() {
                let d = self.g.degree_within(v, cand);
                if d <= 1 {
                    forced = Some(v);
                    break;
                }
                if d > pivot_deg {
                    pivot_deg = d;
                    pivot = Some(v);
                }
            }
            match (forced, pivot) {
                (Some(v), _) => {
                    chosen.insert(v);
                    cand = cand.difference(self.g.neighbors(v).with(v));
                }
                (None, Some(v)) => {
                    self.branch(cand.difference(self.g.neighbors(v).with(v)), chosen.with(v));
                    cand.remove(v);
                }
                (None, None) => {
                    // cand is empty
                    if chosen.len() > self.best.len() {
                        self.best = chosen;
                    }
                    return;
                }
            }
        }
    }
}

pub fn is_independent(g: &Graph, set: VertexSet) -> bool {
    set.iter()
        .all(|v| g.neighbors(v).intersection(set).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph) -> usize {
        let n = g.vertex_count();
        (0u64..1 << n)
            .filter(|&m| (0..n).all(|v| m >> v & 1 == 0 || g.neighbors(v).bits() & m == 0))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn complete_graphs_have_alpha_one() {
        for n in 1..8 {
            let g =
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap();
            assert_eq!(independence_number(&g).unwrap(), 1);
        }
    }

    #[test]
    fn c5_and_petersen_match_enumeration() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(brute_force(&c5), 2);
        assert_eq!(independence_number(&c5).unwrap(), 2);
        let p = petersen();
        assert_eq!(brute_force(&p), 4);
        let w = maximum_independent_set(&p).unwrap();
        assert_eq!(w.len(), 4);
        assert!(is_independent(&p, w));
    }

    #[test]
    fn empty_and_edgeless() {
        let g = Graph::empty(0).unwrap();
        assert_eq!(independence_number(&g).unwrap(), 0);
        let g = Graph::empty(6).unwrap();
        assert_eq!(independence_number(&g).unwrap(), 6);
    }

    #[test]
    fn within_restricts_the_graph() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let within: VertexSet = [0, 1, 2].into_iter().collect();
        assert_eq!(independence_number_within(&c5, within).unwrap(), 2);
    }

    #[test]
    fn capacity_error_above_limit() {
        let g = Graph::empty(INDEPENDENCE_LIMIT + 1).unwrap();
        assert!(independence_number(&g).unwrap_err().is_capacity());
    }
}
