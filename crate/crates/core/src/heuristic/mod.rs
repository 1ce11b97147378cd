//! Constructive solver that follows the extremal argument behind the bound:
//! seed a [2,b]-subgraph `F` with the cycle at a longest-path endpoint,
//! improve it by exchange rewrites under the lexicographic objective
//! (α(G − F), |D|, |F|), then cover `G − F` by cycles, edges and vertices.

mod cover;
mod moves;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

pub use cover::{posa_cover, CoverPart};
pub use moves::{enumerate_moves, ExchangeMove, MoveKind};

use crate::error::{Error, Result};
use crate::factor::{FactorError, PseudoFactor};
use crate::graph::{Edge, Graph, VertexSet};
use crate::independence::independence_number_within;
use crate::paths::{endpoint_cycle, longest_path, LONGEST_PATH_LIMIT};

/// Largest graph [`solve`] accepts.
pub const HEURISTIC_LIMIT: usize = LONGEST_PATH_LIMIT;

/// The current [2,b]-subgraph `F`, a smallest component `D` of `G − F`, the
/// rest `W = V − (F ∪ D)`, and the vertices of `F` adjacent to `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    pub f_vertices: VertexSet,
    pub f_edges: BTreeSet<Edge>,
    pub d: VertexSet,
    pub w: VertexSet,
    pub attachments: Vec<usize>,
    degree: Vec<usize>,
}

impl SearchState {
    /// Derives `V(F)`, `D`, `W` and the attachments from the edge set of
    /// `F`. Ties for the smallest component go to the lowest least vertex.
    pub fn from_edges(g: &Graph, f_edges: BTreeSet<Edge>) -> Self {
        let mut degree = vec![0; g.vertex_count()];
        let mut f_vertices = VertexSet::EMPTY;
        for e in &f_edges {
            degree[e.lo()] += 1;
            degree[e.hi()] += 1;
            f_vertices = f_vertices.with(e.lo()).with(e.hi());
        }
        let rest = g.vertices().difference(f_vertices);
        let d = g
            .connected_components(rest)
            .into_iter()
            .min_by_key(|c| c.len())
            .unwrap_or(VertexSet::EMPTY);
        let touching = d
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(g.neighbors(v)));
        SearchState {
            f_vertices,
            f_edges,
            d,
            w: rest.difference(d),
            attachments: touching.intersection(f_vertices).to_vec(),
            degree,
        }
    }

    pub fn f_degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn objective(&self, g: &Graph) -> Result<Objective> {
        let rest = g.vertices().difference(self.f_vertices);
        Ok(Objective {
            alpha_rest: independence_number_within(g, rest)?,
            d_size: self.d.len(),
            f_size: self.f_vertices.len(),
        })
    }
}

/// Compared lexicographically, smaller is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Objective {
    pub alpha_rest: usize,
    pub d_size: usize,
    pub f_size: usize,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.alpha_rest, self.d_size, self.f_size)
    }
}

#[derive(Debug, Clone)]
pub struct Initial {
    pub state: SearchState,
    /// No longest-path endpoint had two neighbours, so `F` is empty and the
    /// solver relies on the cover alone.
    pub fallback: bool,
}

pub fn initial_subgraph(g: &Graph, b: usize) -> Result<Initial> {
    if b < 2 {
        return Err(FactorError::InvalidB(b).into());
    }
    let cycle = if g.vertex_count() == 0 {
        None
    } else {
        endpoint_cycle(g, &longest_path(g)?)
    };
    let fallback = cycle.is_none();
    let edges = cycle
        .map(|c| c.edges().into_iter().collect())
        .unwrap_or_default();
    Ok(Initial {
        state: SearchState::from_edges(g, edges),
        fallback,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: usize,
    /// Distinct candidate edge sets whose objective was computed.
    pub max_evaluations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 200,
            max_evaluations: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: MoveKind,
    pub before: Objective,
    pub after: Objective,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self.kind, self.before, self.after)
    }
}

#[derive(Debug, Clone)]
pub struct Improvement {
    pub state: SearchState,
    pub steps: Vec<Step>,
    pub evaluations: usize,
    pub budget_exhausted: bool,
}

/// First-improvement descent: apply the first enumerated move whose result
/// has a strictly smaller [`Objective`], until no move improves or the
/// budget runs out.
pub fn improve(state: SearchState, g: &Graph, b: usize, budget: Budget) -> Result<Improvement> {
    let mut memo: HashMap<BTreeSet<Edge>, Objective> = HashMap::new();
    let mut state = state;
    let mut current = state.objective(g)?;
    memo.insert(state.f_edges.clone(), current);
    let mut steps = Vec::new();
    let mut budget_exhausted = false;

    'descent: loop {
        if steps.len() >= budget.max_steps {
            budget_exhausted = true;
            break;
        }
        let mut accepted = None;
        for mv in enumerate_moves(&state, g, b)? {
            let next = mv.apply(&state.f_edges);
            let value = match memo.get(&next) {
                Some(&v) => v,
                None => {
                    if memo.len() > budget.max_evaluations {
                        budget_exhausted = true;
                        break 'descent;
                    }
                    let v = SearchState::from_edges(g, next.clone()).objective(g)?;
                    memo.insert(next.clone(), v);
                    v
                }
            };
            if value < current {
                accepted = Some((mv.kind, next, value));
                break;
            }
        }
        let Some((kind, next, value)) = accepted else {
            break;
        };
        steps.push(Step {
            kind,
            before: current,
            after: value,
        });
        state = SearchState::from_edges(g, next);
        current = value;
    }
    Ok(Improvement {
        state,
        steps,
        evaluations: memo.len() - 1,
        budget_exhausted,
    })
}

/// Which guarantee applies to a bound `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `b ≥ 4`.
    Theorem,
    /// `b = 2`.
    Corollary,
    /// `b = 3`: no bound is claimed.
    NoGuarantee,
}

impl Regime {
    pub fn of(b: usize) -> Self {
        match b {
            2 => Regime::Corollary,
            3 => Regime::NoGuarantee,
            _ => Regime::Theorem,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub factor: PseudoFactor,
    pub regime: Regime,
    pub fallback: bool,
    pub improvement: Option<Improvement>,
    pub cover: Vec<CoverPart>,
}

impl Solution {
    pub fn small_count(&self) -> usize {
        self.factor.small_count()
    }

    pub fn steps(&self) -> &[Step] {
        self.improvement
            .as_ref()
            .map(|i| i.steps.as_slice())
            .unwrap_or(&[])
    }
}

pub fn solve(g: &Graph, b: usize) -> Result<Solution> {
    solve_with_budget(g, b, Budget::default())
}

pub fn solve_with_budget(g: &Graph, b: usize, budget: Budget) -> Result<Solution> {
    if g.vertex_count() > HEURISTIC_LIMIT {
        return Err(Error::Capacity {
            what: "exchange heuristic",
            size: g.vertex_count(),
            limit: HEURISTIC_LIMIT,
        });
    }
    let init = initial_subgraph(g, b)?;
    let (state, improvement) = if init.fallback {
        (init.state, None)
    } else {
        let imp = improve(init.state, g, b, budget)?;
        (imp.state.clone(), Some(imp))
    };
    let rest = g.vertices().difference(state.f_vertices);
    let cover = posa_cover(g, rest)?;
    let mut edges: Vec<Edge> = state.f_edges.iter().copied().collect();
    for part in &cover {
        edges.extend(part.edges());
    }
    let factor = PseudoFactor::new(g, edges, b)?;
    Ok(Solution {
        factor,
        regime: Regime::of(b),
        fallback: init.fallback,
        improvement,
        cover,
    })
}
