//! Hyperwedge transitivity measures: the max-coverage measure with its naive
//! and single-pass algorithms, nine baselines, and graph/node/hyperedge-level
//! aggregation.
//!
//! The central quantity scores a hyperwedge `w` against a candidate set `C`:
//! every wing-to-wing node pair is credited with the best score of a
//! candidate hyperedge covering it, and the credits are averaged over all
//! `|L|·|R|` pairs. [`hypertrans_naive`] computes that definition literally,
//! scanning all of `C` per pair; [`hypertrans_fast`] sweeps `C` once and
//! keeps a running best-score table keyed by covered pairs, returning the
//! identical value at lower cost.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{CandidateCollector, CandidateSet, EdgeId, Hypergraph, NodeId, WedgeParts};
use crate::interaction::ScoreFunction;
use crate::util::{splitmix64, unit_from_hash, KahanSum};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    /// Every per-wedge measure quantifies over a non-empty candidate set.
    #[error("candidate set is empty")]
    EmptyCandidates,
}

/// The measure being evaluated. `HyperTrans` is the max-coverage measure;
/// B1-B9 are the baselines it is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MeasureKind {
    HyperTrans,
    /// Jaccard similarity between the candidate union and the wing union.
    B1,
    /// Fraction of wing-to-wing pairs covered by some candidate.
    B2,
    /// Candidates hitting both wings over candidates hitting either wing.
    B3,
    /// Wing nodes co-contained with an opposite-wing node, over all wing nodes.
    B4,
    /// Wing-node pairs co-contained in a body-disjoint candidate.
    B5,
    /// Wing-node pairs co-contained in a body-intersecting candidate.
    B6,
    /// Mean candidate score per pair instead of the best one.
    B7,
    /// Best candidate score alone, ignoring pair coverage.
    B8,
    /// Summed pair credits without the `|L|·|R|` normalization.
    B9,
}

pub const ALL_MEASURES: [MeasureKind; 10] = [
    MeasureKind::HyperTrans,
    MeasureKind::B1,
    MeasureKind::B2,
    MeasureKind::B3,
    MeasureKind::B4,
    MeasureKind::B5,
    MeasureKind::B6,
    MeasureKind::B7,
    MeasureKind::B8,
    MeasureKind::B9,
];

impl MeasureKind {
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::HyperTrans => "hypertrans",
            MeasureKind::B1 => "b1",
            MeasureKind::B2 => "b2",
            MeasureKind::B3 => "b3",
            MeasureKind::B4 => "b4",
            MeasureKind::B5 => "b5",
            MeasureKind::B6 => "b6",
            MeasureKind::B7 => "b7",
            MeasureKind::B8 => "b8",
            MeasureKind::B9 => "b9",
        }
    }

    /// Whether outputs are guaranteed to stay in [0, 1]. B9 drops the
    /// normalization on purpose.
    pub fn bounded(self) -> bool {
        !matches!(self, MeasureKind::B9)
    }

    /// Whether the per-wedge value reads the score function at all.
    pub fn uses_score_function(self) -> bool {
        matches!(
            self,
            MeasureKind::HyperTrans | MeasureKind::B7 | MeasureKind::B8 | MeasureKind::B9
        )
    }
}

impl std::str::FromStr for MeasureKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        ALL_MEASURES
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| format!("unknown measure {s:?} (expected hypertrans or b1..b9)"))
    }
}

/// Reusable per-wedge scratch: a dense `|L|·|R|` best-score table indexed by
/// wing-local node ranks and reset by generation counter, plus node stamps
/// for the union-based baselines. Nothing is reallocated between wedges.
pub struct WedgeScratch {
    best: Vec<f64>,
    pair_stamp: Vec<u64>,
    pair_gen: u64,
    node_stamp: Vec<u64>,
    node_gen: u64,
    l_hits: Vec<u32>,
    r_hits: Vec<u32>,
}

impl WedgeScratch {
    pub fn new() -> Self {
        WedgeScratch {
            best: Vec::new(),
            pair_stamp: Vec::new(),
            pair_gen: 0,
            node_stamp: Vec::new(),
            node_gen: 0,
            l_hits: Vec::new(),
            r_hits: Vec::new(),
        }
    }

    fn next_pair_gen(&mut self, cells: usize) -> u64 {
        if self.best.len() < cells {
            self.best.resize(cells, 0.0);
            self.pair_stamp.resize(cells, 0);
        }
        self.pair_gen += 1;
        self.pair_gen
    }

    fn next_node_gen(&mut self, nodes: usize) -> u64 {
        if self.node_stamp.len() < nodes {
            self.node_stamp.resize(nodes, 0);
        }
        self.node_gen += 1;
        self.node_gen
    }
}

impl Default for WedgeScratch {
    fn default() -> Self {
        WedgeScratch::new()
    }
}

/// Ranks (positions) in the sorted wing of the nodes shared with `edge`.
fn intersect_ranks(edge: &[NodeId], wing: &[NodeId], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < edge.len() && j < wing.len() {
        match edge[i].cmp(&wing[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(j as u32);
                i += 1;
                j += 1;
            }
        }
    }
}

fn score_edge(f: &ScoreFunction, parts: &WedgeParts, edge: &[NodeId], il: usize, ir: usize) -> f64 {
    if f.is_custom() {
        f.evaluate(parts, edge)
    } else {
        f.evaluate_with_overlap(parts, edge.len(), il, ir)
    }
}

/// Direct evaluation of the wedge measure: for every wing pair, scan all of
/// `C` for covering candidates and keep the best score. Reference oracle for
/// [`hypertrans_fast`]; cost grows as `|L|·|R|·|C|`.
pub fn hypertrans_naive(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    f: &ScoreFunction,
) -> Result<f64, MeasureError> {
    if c.is_empty() {
        return Err(MeasureError::EmptyCandidates);
    }
    let mut total = 0.0;
    for &u in &parts.left {
        for &v in &parts.right {
            let mut best = 0.0f64;
            for e in c.iter() {
                let edge = h.edge(e);
                if edge.binary_search(&u).is_ok() && edge.binary_search(&v).is_ok() {
                    best = best.max(f.evaluate(parts, edge));
                }
            }
            total += best;
        }
    }
    Ok(total / parts.pair_count() as f64)
}

/// Single-sweep evaluation: each candidate is visited once, updating the
/// best-score entry of exactly the wing pairs it covers. Returns the same
/// value as [`hypertrans_naive`].
pub fn hypertrans_fast(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    f: &ScoreFunction,
    scratch: &mut WedgeScratch,
) -> Result<f64, MeasureError> {
    if c.is_empty() {
        return Err(MeasureError::EmptyCandidates);
    }
    Ok(pair_table_sum(h, parts, c, f, scratch) / parts.pair_count() as f64)
}

/// Shared core of the fast measure and its unnormalized variant: the sum of
/// per-pair best scores, maintained incrementally so the cost per candidate
/// is proportional to the pairs it covers.
fn pair_table_sum(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    f: &ScoreFunction,
    scratch: &mut WedgeScratch,
) -> f64 {
    let nr = parts.right.len();
    let cells = parts.left.len() * nr;
    let gen = scratch.next_pair_gen(cells);
    let mut sum = 0.0f64;
    let mut l_hits = std::mem::take(&mut scratch.l_hits);
    let mut r_hits = std::mem::take(&mut scratch.r_hits);
    for e in c.iter() {
        let edge = h.edge(e);
        intersect_ranks(edge, &parts.left, &mut l_hits);
        if l_hits.is_empty() {
            continue;
        }
        intersect_ranks(edge, &parts.right, &mut r_hits);
        if r_hits.is_empty() {
            continue;
        }
        let fe = score_edge(f, parts, edge, l_hits.len(), r_hits.len());
        for &li in &l_hits {
            let row = li as usize * nr;
            for &ri in &r_hits {
                let cell = row + ri as usize;
                let cur = if scratch.pair_stamp[cell] == gen {
                    scratch.best[cell]
                } else {
                    0.0
                };
                // ties keep the first-seen candidate; the max is unchanged
                if fe > cur {
                    scratch.best[cell] = fe;
                    scratch.pair_stamp[cell] = gen;
                    sum += fe - cur;
                }
            }
        }
    }
    scratch.l_hits = l_hits;
    scratch.r_hits = r_hits;
    sum
}

/// Kind-dispatched per-wedge evaluation.
pub fn wedge_measure(
    h: &Hypergraph,
    kind: MeasureKind,
    parts: &WedgeParts,
    c: &CandidateSet,
    f: &ScoreFunction,
    scratch: &mut WedgeScratch,
) -> Result<f64, MeasureError> {
    if c.is_empty() {
        return Err(MeasureError::EmptyCandidates);
    }
    let value = match kind {
        MeasureKind::HyperTrans => hypertrans_fast(h, parts, c, f, scratch)?,
        MeasureKind::B1 => baseline_b1(h, parts, c, scratch),
        MeasureKind::B2 => baseline_b2(h, parts, c, scratch),
        MeasureKind::B3 => baseline_b3(h, parts, c, scratch),
        MeasureKind::B4 => baseline_b4(h, parts, c, scratch),
        MeasureKind::B5 => baseline_pair_fraction(h, parts, c, scratch, BodyRule::Disjoint),
        MeasureKind::B6 => baseline_pair_fraction(h, parts, c, scratch, BodyRule::Intersecting),
        MeasureKind::B7 => baseline_b7(h, parts, c, f, scratch),
        MeasureKind::B8 => baseline_b8(h, parts, c, f, scratch),
        MeasureKind::B9 => pair_table_sum(h, parts, c, f, scratch),
    };
    debug_assert!(
        !kind.bounded() || (-1e-9..=1.0 + 1e-9).contains(&value),
        "{kind:?} out of range: {value}"
    );
    Ok(value)
}

/// Convenience wrapper allocating its own scratch.
pub fn baseline(
    h: &Hypergraph,
    kind: MeasureKind,
    parts: &WedgeParts,
    c: &CandidateSet,
    f: &ScoreFunction,
) -> Result<f64, MeasureError> {
    wedge_measure(h, kind, parts, c, f, &mut WedgeScratch::new())
}

/// B1: Jaccard similarity between the union of all candidates and the union
/// of the two wings.
fn baseline_b1(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    scratch: &mut WedgeScratch,
) -> f64 {
    let gen = scratch.next_node_gen(h.used_node_count());
    let mut union = 0usize;
    let mut union_in_wings = 0usize;
    for e in c.iter() {
        for &v in h.edge(e) {
            if scratch.node_stamp[v as usize] != gen {
                scratch.node_stamp[v as usize] = gen;
                union += 1;
                if parts.left.binary_search(&v).is_ok() || parts.right.binary_search(&v).is_ok() {
                    union_in_wings += 1;
                }
            }
        }
    }
    let wings = parts.left.len() + parts.right.len();
    union_in_wings as f64 / (union + wings - union_in_wings) as f64
}

/// B2: fraction of wing-to-wing pairs covered by at least one candidate.
fn baseline_b2(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    scratch: &mut WedgeScratch,
) -> f64 {
    let nr = parts.right.len();
    let gen = scratch.next_pair_gen(parts.left.len() * nr);
    let mut covered = 0u64;
    let mut l_hits = std::mem::take(&mut scratch.l_hits);
    let mut r_hits = std::mem::take(&mut scratch.r_hits);
    for e in c.iter() {
        let edge = h.edge(e);
        intersect_ranks(edge, &parts.left, &mut l_hits);
        if l_hits.is_empty() {
            continue;
        }
        intersect_ranks(edge, &parts.right, &mut r_hits);
        for &li in &l_hits {
            let row = li as usize * nr;
            for &ri in &r_hits {
                let cell = row + ri as usize;
                if scratch.pair_stamp[cell] != gen {
                    scratch.pair_stamp[cell] = gen;
                    covered += 1;
                }
            }
        }
    }
    scratch.l_hits = l_hits;
    scratch.r_hits = r_hits;
    covered as f64 / parts.pair_count() as f64
}

/// B3: candidates intersecting both wings over candidates intersecting at
/// least one wing; 0 when no candidate touches either wing.
fn baseline_b3(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    scratch: &mut WedgeScratch,
) -> f64 {
    let mut either = 0u64;
    let mut both = 0u64;
    let mut l_hits = std::mem::take(&mut scratch.l_hits);
    let mut r_hits = std::mem::take(&mut scratch.r_hits);
    for e in c.iter() {
        let edge = h.edge(e);
        intersect_ranks(edge, &parts.left, &mut l_hits);
        intersect_ranks(edge, &parts.right, &mut r_hits);
        match (l_hits.is_empty(), r_hits.is_empty()) {
            (false, false) => {
                either += 1;
                both += 1;
            }
            (false, true) | (true, false) => either += 1,
            (true, true) => {}
        }
    }
    scratch.l_hits = l_hits;
    scratch.r_hits = r_hits;
    if either == 0 {
        0.0
    } else {
        both as f64 / either as f64
    }
}

/// B4: wing nodes that share a candidate with the opposite wing set, over all
/// wing nodes. Membership in a candidate that merely touches the opposite
/// wing is enough; the candidate need not co-contain an opposite-wing node
/// with this particular node.
fn baseline_b4(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    scratch: &mut WedgeScratch,
) -> f64 {
    let mut l_hits = std::mem::take(&mut scratch.l_hits);
    let mut r_hits = std::mem::take(&mut scratch.r_hits);

    // |L ∩ N(R;C)|: distinct L-nodes inside candidates touching R
    let mut count = |own: &[NodeId], other: &[NodeId], scratch: &mut WedgeScratch| -> u64 {
        let gen = scratch.next_node_gen(h.used_node_count());
        let mut hits = 0u64;
        for e in c.iter() {
            let edge = h.edge(e);
            intersect_ranks(edge, other, &mut r_hits);
            if r_hits.is_empty() {
                continue;
            }
            intersect_ranks(edge, own, &mut l_hits);
            for &rank in &l_hits {
                let v = own[rank as usize] as usize;
                if scratch.node_stamp[v] != gen {
                    scratch.node_stamp[v] = gen;
                    hits += 1;
                }
            }
        }
        hits
    };
    let left_connected = count(&parts.left, &parts.right, scratch);
    let right_connected = count(&parts.right, &parts.left, scratch);

    scratch.l_hits = l_hits;
    scratch.r_hits = r_hits;
    (left_connected + right_connected) as f64 / (parts.left.len() + parts.right.len()) as f64
}

enum BodyRule {
    Disjoint,
    Intersecting,
}

/// B5/B6: fraction of the `C(|L∪R|, 2)` wing-node pairs co-contained in a
/// qualifying candidate (body-disjoint for B5, body-intersecting for B6).
fn baseline_pair_fraction(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    scratch: &mut WedgeScratch,
    rule: BodyRule,
) -> f64 {
    let nl = parts.left.len();
    let nw = nl + parts.right.len();
    let total_pairs = (nw * (nw - 1) / 2) as u64;
    if total_pairs == 0 {
        return 0.0;
    }
    let gen = scratch.next_pair_gen(nw * nw);
    let mut covered = 0u64;
    let mut l_hits = std::mem::take(&mut scratch.l_hits);
    let mut r_hits = std::mem::take(&mut scratch.r_hits);
    let mut combined: Vec<u32> = Vec::new();
    for e in c.iter() {
        let edge = h.edge(e);
        let touches_body = Hypergraph::intersection_size(edge, &parts.body) > 0;
        let qualifies = match rule {
            BodyRule::Disjoint => !touches_body,
            BodyRule::Intersecting => touches_body,
        };
        if !qualifies {
            continue;
        }
        intersect_ranks(edge, &parts.left, &mut l_hits);
        intersect_ranks(edge, &parts.right, &mut r_hits);
        combined.clear();
        combined.extend(l_hits.iter().copied());
        combined.extend(r_hits.iter().map(|&r| r + nl as u32));
        for (i, &a) in combined.iter().enumerate() {
            for &b in &combined[i + 1..] {
                let cell = a as usize * nw + b as usize;
                if scratch.pair_stamp[cell] != gen {
                    scratch.pair_stamp[cell] = gen;
                    covered += 1;
                }
            }
        }
    }
    scratch.l_hits = l_hits;
    scratch.r_hits = r_hits;
    covered as f64 / total_pairs as f64
}

/// B7: per-pair mean candidate score (over all of `C`) instead of the best.
fn baseline_b7(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    f: &ScoreFunction,
    scratch: &mut WedgeScratch,
) -> f64 {
    // sum over pairs of (sum over covering candidates of f) equals the sum
    // over candidates of f times the number of pairs they cover
    let mut total = 0.0f64;
    let mut l_hits = std::mem::take(&mut scratch.l_hits);
    let mut r_hits = std::mem::take(&mut scratch.r_hits);
    for e in c.iter() {
        let edge = h.edge(e);
        intersect_ranks(edge, &parts.left, &mut l_hits);
        if l_hits.is_empty() {
            continue;
        }
        intersect_ranks(edge, &parts.right, &mut r_hits);
        if r_hits.is_empty() {
            continue;
        }
        let fe = score_edge(f, parts, edge, l_hits.len(), r_hits.len());
        total += fe * (l_hits.len() * r_hits.len()) as f64;
    }
    scratch.l_hits = l_hits;
    scratch.r_hits = r_hits;
    total / c.len() as f64 / parts.pair_count() as f64
}

/// B8: the best candidate score on its own, with no pair bookkeeping.
fn baseline_b8(
    h: &Hypergraph,
    parts: &WedgeParts,
    c: &CandidateSet,
    f: &ScoreFunction,
    scratch: &mut WedgeScratch,
) -> f64 {
    let mut best = 0.0f64;
    let mut l_hits = std::mem::take(&mut scratch.l_hits);
    let mut r_hits = std::mem::take(&mut scratch.r_hits);
    for e in c.iter() {
        let edge = h.edge(e);
        intersect_ranks(edge, &parts.left, &mut l_hits);
        intersect_ranks(edge, &parts.right, &mut r_hits);
        best = best.max(score_edge(f, parts, edge, l_hits.len(), r_hits.len()));
    }
    scratch.l_hits = l_hits;
    scratch.r_hits = r_hits;
    best
}

/// Which candidates are relevant to a measure when it is lifted to whole
/// hypergraphs with `C = E`. For the max-coverage family only overlapping
/// edges can contribute; B3-B6 also react to edges touching a single wing.
/// For B1 and B7, whose values depend on the candidate multiset itself, the
/// overlapping set is the set of contributing candidates.
fn rule_candidates(
    kind: MeasureKind,
    h: &Hypergraph,
    parts: &WedgeParts,
    collector: &mut CandidateCollector,
    out: &mut Vec<EdgeId>,
) {
    match kind {
        MeasureKind::B3 | MeasureKind::B4 | MeasureKind::B5 | MeasureKind::B6 => {
            collector.touching_wings(h, parts, out)
        }
        _ => collector.overlapping(h, parts, out),
    }
}

/// Per-wedge score within a graph-level run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WedgeScore {
    pub a: EdgeId,
    pub b: EdgeId,
    pub body_size: u32,
    pub value: f64,
}

/// Seeded uniform hyperwedge sampling. The keep/drop decision is a pure
/// function of (seed, wedge), so it is stable under any enumeration order.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SampleSpec {
    pub rate: f64,
    pub seed: u64,
}

impl SampleSpec {
    pub fn keeps(&self, a: EdgeId, b: EdgeId) -> bool {
        let key = ((a as u64) << 32) | b as u64;
        unit_from_hash(splitmix64(self.seed ^ splitmix64(key))) < self.rate
    }
}

/// Graph, node, and hyperedge-level transitivity of one measure run.
#[derive(Debug, Clone, Serialize)]
pub struct LevelSummary {
    pub graph_transitivity: f64,
    pub wedge_count: u64,
    /// True when the hypergraph has no hyperwedges at all; the graph value
    /// is reported as 0 in that case.
    pub no_wedges: bool,
    /// True when a sampling spec was applied.
    pub sampled: bool,
    /// True when the score function is a custom one that failed the goodness
    /// gate: the axiom guarantees do not apply to these values.
    pub score_guarantees_void: bool,
    pub warnings: Vec<String>,
    /// Per-node mean over the wedges whose body contains the node; nodes
    /// with no such wedge are omitted.
    pub node_transitivity: BTreeMap<NodeId, f64>,
    /// Per-hyperedge mean over the wedges the edge participates in.
    pub hyperedge_transitivity: BTreeMap<EdgeId, f64>,
    /// max - min of hyperedge transitivity; `None` when no edge participates
    /// in any wedge.
    pub hyperedge_transitivity_range: Option<f64>,
}

/// A full measure pass over a hypergraph.
#[derive(Debug, Clone)]
pub struct MeasureRun {
    pub kind: MeasureKind,
    pub summary: LevelSummary,
    pub scores: Vec<WedgeScore>,
}

/// Trials and seed of the goodness gate applied to custom score functions.
const GATE_TRIALS: u64 = 512;
const GATE_SEED: u64 = 0x6a7e;

/// Scores every (possibly sampled) hyperwedge with the measure's relevant
/// candidate set and aggregates the graph mean (Kahan-compensated), per-node,
/// and per-hyperedge means in one pass.
///
/// Custom score functions pass through the goodness gate first; a failing
/// one still computes, but the run is flagged `score_guarantees_void`.
pub fn run_measure(
    h: &Hypergraph,
    f: &ScoreFunction,
    kind: MeasureKind,
    sample: Option<SampleSpec>,
) -> MeasureRun {
    let mut warnings = Vec::new();
    let mut score_guarantees_void = false;
    if f.is_custom() && kind.uses_score_function() {
        let gate = crate::interaction::check_goodness(f, GATE_TRIALS, GATE_SEED);
        if !gate.all_pass() {
            score_guarantees_void = true;
            let failed: Vec<&str> = gate
                .verdicts
                .iter()
                .filter(|(_, v)| !v.passed())
                .map(|(p, _)| p.name())
                .collect();
            warnings.push(format!(
                "custom score function failed the goodness gate ({}); axiom guarantees void",
                failed.join(", ")
            ));
        }
    }
    let mut scratch = WedgeScratch::new();
    let mut collector = CandidateCollector::new(h.edge_count());
    let mut candidates = Vec::new();
    let mut scores = Vec::new();
    let mut graph_sum = KahanSum::new();
    let mut node_sum = vec![0.0f64; h.used_node_count()];
    let mut node_cnt = vec![0u32; h.used_node_count()];
    let mut edge_sum = vec![0.0f64; h.edge_count()];
    let mut edge_cnt = vec![0u32; h.edge_count()];

    for w in h.hyperwedges() {
        if let Some(s) = sample {
            if !s.keeps(w.a, w.b) {
                continue;
            }
        }
        let parts = h.wedge_parts(w).expect("enumerated wedges are valid");
        rule_candidates(kind, h, &parts, &mut collector, &mut candidates);
        let value = if candidates.is_empty() {
            0.0
        } else {
            let c = CandidateSet::new(std::mem::take(&mut candidates));
            let v = wedge_measure(h, kind, &parts, &c, f, &mut scratch)
                .expect("candidate set is non-empty");
            candidates = {
                let mut v: Vec<EdgeId> = c.indices().to_vec();
                v.clear();
                v
            };
            v
        };
        graph_sum.add(value);
        for &v in &parts.body {
            node_sum[v as usize] += value;
            node_cnt[v as usize] += 1;
        }
        for e in [w.a, w.b] {
            edge_sum[e as usize] += value;
            edge_cnt[e as usize] += 1;
        }
        scores.push(WedgeScore {
            a: w.a,
            b: w.b,
            body_size: parts.body.len() as u32,
            value,
        });
    }

    let wedge_count = scores.len() as u64;
    let graph_transitivity = if wedge_count == 0 {
        warnings.push("hypergraph has no hyperwedges; transitivity reported as 0".into());
        0.0
    } else {
        graph_sum.value() / wedge_count as f64
    };

    let node_transitivity: BTreeMap<NodeId, f64> = node_cnt
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(v, &c)| (v as NodeId, node_sum[v] / c as f64))
        .collect();
    let hyperedge_transitivity: BTreeMap<EdgeId, f64> = edge_cnt
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(e, &c)| (e as EdgeId, edge_sum[e] / c as f64))
        .collect();
    let hyperedge_transitivity_range = if hyperedge_transitivity.is_empty() {
        None
    } else {
        let lo = hyperedge_transitivity
            .values()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        let hi = hyperedge_transitivity
            .values()
            .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        Some(hi - lo)
    };

    MeasureRun {
        kind,
        summary: LevelSummary {
            graph_transitivity,
            wedge_count,
            no_wedges: wedge_count == 0,
            sampled: sample.is_some(),
            score_guarantees_void,
            warnings,
            node_transitivity,
            hyperedge_transitivity,
            hyperedge_transitivity_range,
        },
        scores,
    }
}

/// Mean hyperwedge transitivity of the whole hypergraph, plus the per-wedge
/// stream it was averaged from.
pub fn graph_transitivity(
    h: &Hypergraph,
    f: &ScoreFunction,
    kind: MeasureKind,
    sample: Option<SampleSpec>,
) -> (f64, Vec<WedgeScore>) {
    let run = run_measure(h, f, kind, sample);
    (run.summary.graph_transitivity, run.scores)
}

/// Per-node transitivity under the max-coverage measure: the mean score of
/// the wedges whose body contains the node.
pub fn node_transitivity(h: &Hypergraph, f: &ScoreFunction) -> BTreeMap<NodeId, f64> {
    run_measure(h, f, MeasureKind::HyperTrans, None)
        .summary
        .node_transitivity
}

/// Per-hyperedge transitivity and its max - min range.
pub fn hyperedge_transitivity(
    h: &Hypergraph,
    f: &ScoreFunction,
) -> (BTreeMap<EdgeId, f64>, Option<f64>) {
    let s = run_measure(h, f, MeasureKind::HyperTrans, None).summary;
    (s.hyperedge_transitivity, s.hyperedge_transitivity_range)
}
