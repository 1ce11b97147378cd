//! Exact minimum number of small (edge or vertex) components over all
//! pseudo [2,b]-factors.
//!
//! A pseudo [2,b]-factor is the same thing as a partition of `V` into
//! blocks, each block being a single vertex, an adjacent pair, or a set
//! whose induced subgraph has a spanning subgraph with degrees in `[2, b]`
//! (every piece of such a subgraph has minimum degree 2, hence at least
//! three vertices). [`min_small_components_exact`] runs a subset DP over
//! that partition; [`min_small_components_naive`] enumerates the partitions
//! outright.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::factor::{deg_range_spanning_witness, FactorError, PseudoFactor};
use crate::graph::{Edge, Graph, VertexSet};

pub const ORACLE_LIMIT: usize = 15;
pub const NAIVE_LIMIT: usize = 9;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: PseudoFactor,
    /// The partition behind the witness, in pivot order.
    pub blocks: Vec<VertexSet>,
}

const INF: (u16, u16) = (u16::MAX, u16::MAX);

/// Subset DP: `dp[S]` is the least (small components, vertex components)
/// pair over partitions of `S`, where the block holding the lowest vertex of
/// `S` is chosen explicitly. Among optimal partitions the one whose block
/// sequence is lexicographically smallest (blocks compared as bitmasks) is
/// returned.
pub fn min_small_components_exact(g: &Graph, b: usize) -> Result<OracleResult> {
    if b < 2 {
        return Err(FactorError::InvalidB(b).into());
    }
    let n = g.vertex_count();
    if n > ORACLE_LIMIT {
        return Err(Error::Capacity {
            what: "exact oracle",
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    let full = 1usize << n;

    // block cost: zero-cost [2,b] block, adjacent pair, singleton
    let mut cost = vec![INF; full];
    for (mask, slot) in cost.iter_mut().enumerate().skip(1) {
        let set = VertexSet::from_bits(mask as u64);
        *slot = match set.len() {
            1 => (1, 1),
            2 => {
                let v = set.to_vec();
                if g.has_edge(v[0], v[1]) {
                    (1, 0)
                } else {
                    INF
                }
            }
            _ => {
                if deg_range_spanning_witness(g, set, b)?.is_some() {
                    (0, 0)
                } else {
                    INF
                }
            }
        };
    }

    let mut dp = vec![INF; full];
    let mut choice = vec![0usize; full];
    dp[0] = (0, 0);
    for s in 1..full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = 0usize;
        loop {
            let block = sub | low;
            let c = cost[block];
            if c != INF {
                let tail = dp[s ^ block];
                let total = (c.0 + tail.0, c.1 + tail.1);
                if total < dp[s] {
                    dp[s] = total;
                    choice[s] = block;
                }
            }
            if sub == rest {
                break;
            }
            sub = sub.wrapping_sub(rest) & rest;
        }
    }

    let mut blocks = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut s = full - 1;
    while s != 0 {
        let block = VertexSet::from_bits(choice[s] as u64);
        match block.len() {
            1 => {}
            2 => {
                let v = block.to_vec();
                edges.push(Edge::new(v[0], v[1]));
            }
            _ => edges.extend(
                deg_range_spanning_witness(g, block, b)?.expect("block was feasible in the table"),
            ),
        }
        blocks.push(block);
        s ^= choice[s];
    }
    let witness = PseudoFactor::new(g, edges, b)?;
    let optimum = dp[full - 1].0 as usize;
    debug_assert_eq!(witness.small_count(), optimum);
    Ok(OracleResult {
        optimum,
        witness,
        blocks,
    })
}

/// Enumerates every set partition of `V` (restricted growth strings) and
/// checks each block by enumerating edge subsets of the block. Shares no
/// search code with [`min_small_components_exact`].
pub fn min_small_components_naive(g: &Graph, b: usize) -> Result<usize> {
    if b < 2 {
        return Err(FactorError::InvalidB(b).into());
    }
    let n = g.vertex_count();
    if n > NAIVE_LIMIT {
        return Err(Error::Capacity {
            what: "naive oracle",
            size: n,
            limit: NAIVE_LIMIT,
        });
    }
    let mut search = Partitions {
        g,
        b,
        blocks: Vec::new(),
        valid: HashMap::new(),
        best: usize::MAX,
    };
    search.place(0);
    Ok(if n == 0 { 0 } else { search.best })
}

struct Partitions<'a> {
    g: &'a Graph,
    b: usize,
    blocks: Vec<Vec<usize>>,
    valid: HashMap<Vec<usize>, bool>,
    best: usize,
}

impl Partitions<'_> {
    fn place(&mut self, v: usize) {
        if v == self.g.vertex_count() {
            let blocks = std::mem::take(&mut self.blocks);
            let mut small = 0;
            let mut ok = true;
            for block in &blocks {
                match block.len() {
                    1 => small += 1,
                    2 => {
                        small += 1;
                        ok &= self.g.has_edge(block[0], block[1]);
                    }
                    _ => ok &= self.block_ok(block),
                }
                if !ok {
                    break;
                }
            }
            if ok {
                self.best = self.best.min(small);
            }
            self.blocks = blocks;
            return;
        }
        for i in 0..self.blocks.len() {
            self.blocks[i].push(v);
            self.place(v + 1);
            self.blocks[i].pop();
        }
        self.blocks.push(vec![v]);
        self.place(v + 1);
        self.blocks.pop();
    }

    fn block_ok(&mut self, block: &[usize]) -> bool {
        if let Some(&known) = self.valid.get(block) {
            return known;
        }
        let mut edges = Vec::new();
        for (i, &u) in block.iter().enumerate() {
            for &v in &block[i + 1..] {
                if self.g.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let n = self.g.vertex_count();
        let mut undecided = vec![0usize; n];
        for &(u, v) in &edges {
            undecided[u] += 1;
            undecided[v] += 1;
        }
        let mut degree = vec![0usize; n];
        let ok = edge_subsets(&edges, 0, block, self.b, &mut degree, &mut undecided);
        self.valid.insert(block.to_vec(), ok);
        ok
    }
}

/// Include/exclude each edge in turn; a branch dies once a degree passes
/// `b` or a vertex can no longer reach 2.
fn edge_subsets(
    edges: &[(usize, usize)],
    i: usize,
    block: &[usize],
    b: usize,
    degree: &mut [usize],
    undecided: &mut [usize],
) -> bool {
    if i == edges.len() {
        return block.iter().all(|&v| degree[v] >= 2 && degree[v] <= b);
    }
    let (u, v) = edges[i];
    undecided[u] -= 1;
    undecided[v] -= 1;
    let mut found = false;
    if degree[u] < b && degree[v] < b {
        degree[u] += 1;
        degree[v] += 1;
        found = edge_subsets(edges, i + 1, block, b, degree, undecided);
        degree[u] -= 1;
        degree[v] -= 1;
    }
    if !found && degree[u] + undecided[u] >= 2 && degree[v] + undecided[v] >= 2 {
        found = edge_subsets(edges, i + 1, block, b, degree, undecided);
    }
    undecided[u] += 1;
    undecided[v] += 1;
    found
}
