//! Pseudo [2,b]-factors of small graphs.
//!
//! A pseudo [2,b]-factor is a spanning subgraph in which every component on
//! at least three vertices has all degrees in `[2, b]`; the remaining
//! components are single edges or single vertices ("small" components).
//! The crate computes the exact minimum number of small components, runs a
//! constructive exchange heuristic, and checks the ceiling
//! `max(0, α − ⌊b(δ−1)/2⌋)` on generated corpora.

pub mod error;
pub mod factor;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod heuristic;
pub mod independence;
pub mod oracle;
pub mod paths;

pub use error::{Error, Result};
pub use factor::{
    has_deg_range_spanning, is_2b_subgraph, validate_pseudo_factor, ComponentClass, FactorError,
    FactorSummary, PseudoFactor,
};
pub use graph::{load_dimacs, load_edge_list, load_graph, Edge, Graph, VertexSet};
pub use independence::{independence_number, maximum_independent_set};
pub use oracle::{min_small_components_exact, min_small_components_naive, OracleResult};
pub use paths::{endpoint_cycle, longest_path};
