//! Small hand-built hypergraphs used by the conformance suite and tests.
//!
//! The main fixture is a five-node wedge `{{1,2,3},{3,4,5}}` together with
//! fifteen numbered candidate hyperedges covering every way of touching its
//! wings and body, plus the exact wing union `{1,2,4,5}`. Its wings are
//! `L = {1,2}` and `R = {4,5}` and its body is `{3}`.

use crate::hypergraph::{CandidateSet, EdgeId, Hypergraph, Hyperwedge};

/// The fifteen numbered candidate hyperedges, by label.
pub const NUMBERED_EDGES: [&[u64]; 15] = [
    &[1, 2],
    &[1, 3],
    &[1, 4],
    &[1, 5],
    &[2, 4],
    &[2, 5],
    &[1, 3, 4],
    &[1, 2, 4],
    &[1, 2, 5],
    &[1, 4, 5],
    &[2, 4, 5],
    &[1, 2, 3, 4],
    &[1, 2, 3, 5],
    &[1, 3, 4, 5],
    &[2, 3, 4, 5],
];

/// Hypergraph holding the wedge edges `{1,2,3}` (index 0) and `{3,4,5}`
/// (index 1), the fifteen numbered edges (indices 2..17), and the exact
/// wing union `{1,2,4,5}` (index 17).
pub fn lemma_hypergraph() -> Hypergraph {
    let mut raw: Vec<Vec<u64>> = vec![vec![1, 2, 3], vec![3, 4, 5]];
    raw.extend(NUMBERED_EDGES.iter().map(|e| e.to_vec()));
    raw.push(vec![1, 2, 4, 5]);
    Hypergraph::from_label_edges(raw, true).expect("fixture is non-empty")
}

/// The fixture hyperwedge `{{1,2,3},{3,4,5}}`.
pub fn lemma_wedge() -> Hyperwedge {
    Hyperwedge::new(0, 1)
}

/// Index of numbered edge `k` (1-based) inside [`lemma_hypergraph`].
pub fn lemma_edge_id(k: usize) -> EdgeId {
    assert!((1..=15).contains(&k));
    (k + 1) as EdgeId
}

/// Index of the wing-union edge `{1,2,4,5}` inside [`lemma_hypergraph`].
pub fn wing_union_edge_id() -> EdgeId {
    17
}

/// Candidate set from 1-based numbered-edge ids.
pub fn lemma_candidates(ks: &[usize]) -> CandidateSet {
    CandidateSet::new(ks.iter().map(|&k| lemma_edge_id(k)).collect())
}

/// The pairwise triangle `{{1,2},{1,3},{2,3}}`.
pub fn triangle() -> Hypergraph {
    Hypergraph::from_label_edges(vec![vec![1, 2], vec![1, 3], vec![2, 3]], true).unwrap()
}

/// The open two-edge path `{{1,2},{2,3}}`.
pub fn path() -> Hypergraph {
    Hypergraph::from_label_edges(vec![vec![1, 2], vec![2, 3]], true).unwrap()
}

/// The three-edge hypergraph `{{1,2,3},{3,4,5},{1,2,4,5}}` whose unnormalized
/// transitivity exceeds 1 at graph level.
pub fn closed_three_edge() -> Hypergraph {
    Hypergraph::from_label_edges(vec![vec![1, 2, 3], vec![3, 4, 5], vec![1, 2, 4, 5]], true)
        .unwrap()
}
