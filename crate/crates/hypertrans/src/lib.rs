//! Transitivity of group interactions in hypergraphs.
//!
//! This crate measures how transitive a hypergraph is — how strongly the two
//! sides of each pair of intersecting hyperedges (a *hyperwedge*) interact
//! through other hyperedges — and generates synthetic hypergraphs that
//! reproduce the transitivity patterns seen in real data.
//!
//! The pieces:
//!
//! * [`hypergraph`] — storage, hyperwedge enumeration, candidate retrieval.
//! * [`interaction`] — group-interaction score functions and the goodness
//!   checker that gates custom ones.
//! * [`measures`] — the max-coverage wedge measure (naive and fast exact
//!   algorithms), nine baselines, and graph/node/hyperedge aggregation.
//! * [`axioms`] — an executable conformance suite: seven axioms, hand-built
//!   fixtures, and randomized counterexample search with shrinking.
//! * [`generators`] — the hierarchical community generator, its naive
//!   variant, and the degree-preserving null model.
//! * [`analysis`] — rank correlation, distribution distance, Z-tests, degree
//!   profiles, and the four-observation comparison report.
//!
//! The `book/` directory of the repository walks through the concepts with
//! runnable examples; its code blocks are compiled as doc-tests.

pub mod analysis;
pub mod axioms;
pub mod fixtures;
pub mod generators;
pub mod hypergraph;
pub mod interaction;
pub mod measures;
pub mod util;

pub use hypergraph::{CandidateSet, EdgeId, Hypergraph, Hyperwedge, NodeId, WedgeParts};
pub use interaction::{check_goodness, f_coverage, f_penalized, GoodnessReport, ScoreFunction};
pub use measures::{
    graph_transitivity, hypertrans_fast, hypertrans_naive, run_measure, LevelSummary, MeasureKind,
    MeasureRun, SampleSpec, WedgeScore,
};

#[cfg(doctest)]
mod book;
