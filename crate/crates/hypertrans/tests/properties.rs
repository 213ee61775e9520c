//! Property tests for the core invariants: enumeration against brute force,
//! candidate retrieval against membership scans, score-function order
//! relations, and the boundedness of every normalized measure.

use proptest::prelude::*;

use hypertrans::hypergraph::{CandidateSet, EdgeId, Hypergraph, Hyperwedge};
use hypertrans::interaction::{f_coverage, f_penalized, ScoreFunction};
use hypertrans::measures::{self, MeasureKind, WedgeScratch, ALL_MEASURES};

fn edge_strategy(max_node: u64, max_size: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::btree_set(0..max_node, 2..=max_size)
        .prop_map(|s| s.into_iter().collect::<Vec<u64>>())
}

fn edges_strategy(
    max_node: u64,
    max_size: usize,
    max_edges: usize,
) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(edge_strategy(max_node, max_size), 1..=max_edges)
}

fn brute_force_wedges(h: &Hypergraph) -> Vec<Hyperwedge> {
    let m = h.edge_count() as EdgeId;
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if h.classify_pair(a, b).is_ok() {
                out.push(Hyperwedge { a, b });
            }
        }
    }
    out
}

proptest! {
    /// Index-driven enumeration emits exactly the pairs a full quadratic
    /// scan qualifies, each once, in canonical order.
    #[test]
    fn enumeration_matches_brute_force(edges in edges_strategy(14, 4, 50)) {
        let h = Hypergraph::from_label_edges(edges, true).unwrap();
        let fast: Vec<Hyperwedge> = h.hyperwedges().collect();
        prop_assert_eq!(fast, brute_force_wedges(&h));
    }

    /// The inverted-index candidate retrieval equals a membership test over
    /// every edge.
    #[test]
    fn omega_matches_membership_scan(edges in edges_strategy(12, 4, 30)) {
        let h = Hypergraph::from_label_edges(edges, true).unwrap();
        for w in h.hyperwedges() {
            let parts = h.wedge_parts(w).unwrap();
            let omega = h.overlapping_candidates(&parts, &[]);
            let brute: Vec<EdgeId> = (0..h.edge_count() as EdgeId)
                .filter(|&e| {
                    let edge = h.edge(e);
                    Hypergraph::intersection_size(edge, &parts.left) > 0
                        && Hypergraph::intersection_size(edge, &parts.right) > 0
                })
                .collect();
            prop_assert_eq!(omega.indices(), brute.as_slice());
        }
    }

    /// Wings and body of every emitted wedge are non-empty, disjoint, and
    /// partition the union of the two edges.
    #[test]
    fn wedge_parts_invariants(edges in edges_strategy(12, 4, 30)) {
        let h = Hypergraph::from_label_edges(edges, true).unwrap();
        for w in h.hyperwedges() {
            let parts = h.wedge_parts(w).unwrap();
            prop_assert!(!parts.left.is_empty());
            prop_assert!(!parts.right.is_empty());
            prop_assert!(!parts.body.is_empty());
            let mut all: Vec<_> = parts
                .left
                .iter()
                .chain(&parts.right)
                .chain(&parts.body)
                .copied()
                .collect();
            all.sort_unstable();
            let mut union: Vec<_> = h.edge(w.a).iter().chain(h.edge(w.b)).copied().collect();
            union.sort_unstable();
            union.dedup();
            prop_assert_eq!(all, union);
        }
    }

    /// In pairwise graphs a wedge has at most one overlapping edge.
    #[test]
    fn pairwise_graphs_have_lone_overlaps(edges in edges_strategy(10, 2, 20)) {
        let h = Hypergraph::from_label_edges(edges, true).unwrap();
        for w in h.hyperwedges() {
            let parts = h.wedge_parts(w).unwrap();
            prop_assert!(h.overlapping_candidates(&parts, &[]).len() <= 1);
        }
    }

    /// The penalized score never exceeds the coverage score, and equals 1
    /// exactly on the wing union.
    #[test]
    fn penalized_below_coverage(
        edges in edges_strategy(10, 4, 12),
        probe in edge_strategy(12, 6),
    ) {
        let h = Hypergraph::from_label_edges(edges, true).unwrap();
        let probe: Vec<u32> = probe.iter().map(|&v| v as u32).collect();
        for w in h.hyperwedges() {
            let parts = h.wedge_parts(w).unwrap();
            let c = f_coverage(&parts, &probe);
            let p = f_penalized(&parts, &probe);
            prop_assert!(p <= c + 1e-12);
            let mut union: Vec<u32> = parts.left.iter().chain(&parts.right).copied().collect();
            union.sort_unstable();
            prop_assert!((f_penalized(&parts, &union) - 1.0).abs() < 1e-12);
            if (p - 1.0).abs() < 1e-12 {
                prop_assert_eq!(probe.clone(), union);
            }
        }
    }

    /// The sweep algorithm agrees with the per-pair scan, and every
    /// normalized measure stays inside [0, 1].
    #[test]
    fn fast_naive_and_bounds(
        edges in edges_strategy(12, 4, 20),
        mask in any::<u32>(),
    ) {
        let h = Hypergraph::from_label_edges(edges, true).unwrap();
        let m = h.edge_count() as u32;
        let ids: Vec<EdgeId> = (0..m).filter(|e| mask >> (e % 32) & 1 == 1).collect();
        prop_assume!(!ids.is_empty());
        let c = CandidateSet::new(ids);
        let mut scratch = WedgeScratch::new();
        for w in h.hyperwedges().take(8) {
            let parts = h.wedge_parts(w).unwrap();
            for f in [ScoreFunction::Coverage, ScoreFunction::Penalized] {
                let naive = measures::hypertrans_naive(&h, &parts, &c, &f).unwrap();
                let fast = measures::hypertrans_fast(&h, &parts, &c, &f, &mut scratch).unwrap();
                prop_assert!((naive - fast).abs() < 1e-12);
            }
            for kind in ALL_MEASURES {
                let v = measures::wedge_measure(
                    &h,
                    kind,
                    &parts,
                    &c,
                    &ScoreFunction::Penalized,
                    &mut scratch,
                )
                .unwrap();
                if kind.bounded() {
                    prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v), "{:?} = {}", kind, v);
                }
                prop_assert!(v >= -1e-12);
            }
        }
    }

    /// Graph-level value of the max-coverage measure is the mean of the
    /// per-wedge stream it returns.
    #[test]
    fn graph_value_is_mean_of_stream(edges in edges_strategy(12, 4, 20)) {
        let h = Hypergraph::from_label_edges(edges, true).unwrap();
        let (t, scores) = measures::graph_transitivity(
            &h,
            &ScoreFunction::Penalized,
            MeasureKind::HyperTrans,
            None,
        );
        if scores.is_empty() {
            prop_assert_eq!(t, 0.0);
        } else {
            let mean: f64 = scores.iter().map(|s| s.value).sum::<f64>() / scores.len() as f64;
            prop_assert!((t - mean).abs() < 1e-9);
        }
    }
}
