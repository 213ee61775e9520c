//! Group-interaction score functions and the six-property goodness checker.
//!
//! A score function rates how much a single candidate hyperedge contributes
//! to the interaction between the two wings of a hyperwedge. Two built-ins
//! are provided:
//!
//! * [`ScoreFunction::Coverage`] — the fraction of wing-to-wing pairs the
//!   candidate covers: `|L∩e|·|R∩e| / (|L|·|R|)`.
//! * [`ScoreFunction::Penalized`] — the same numerator, but external nodes in
//!   the candidate inflate the denominators:
//!   `|L∩e|·|R∩e| / (|L∪(e\R)|·|R∪(e\L)|)`.
//!
//! A function is *good* when it satisfies six properties (bounded in [0,1],
//! positive on overlapping edges, 1 only and always on the exact wing union,
//! and monotone under wing-node enlargement, strictly so for overlapping
//! results). Goodness is what makes the wedge measure built on top of it
//! satisfy the whole axiom suite, so custom functions are accepted but should
//! be run through [`check_goodness`] first.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hypergraph::{Hypergraph, NodeId, WedgeParts};

pub type CustomScoreFn = dyn Fn(&WedgeParts, &[NodeId]) -> f64 + Send + Sync;

#[derive(Clone)]
pub enum ScoreFunction {
    Coverage,
    Penalized,
    Custom(Arc<CustomScoreFn>),
}

impl std::fmt::Debug for ScoreFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScoreFunction::Coverage => write!(f, "coverage"),
            ScoreFunction::Penalized => write!(f, "penalized"),
            ScoreFunction::Custom(_) => write!(f, "custom"),
        }
    }
}

impl ScoreFunction {
    pub fn name(&self) -> &'static str {
        match self {
            ScoreFunction::Coverage => "coverage",
            ScoreFunction::Penalized => "penalized",
            ScoreFunction::Custom(_) => "custom",
        }
    }

    /// Scores candidate hyperedge `e` (a sorted node set) against the wedge.
    pub fn evaluate(&self, parts: &WedgeParts, e: &[NodeId]) -> f64 {
        match self {
            ScoreFunction::Custom(f) => f(parts, e),
            builtin => {
                let in_left = Hypergraph::intersection_size(e, &parts.left);
                let in_right = Hypergraph::intersection_size(e, &parts.right);
                builtin.evaluate_with_overlap(parts, e.len(), in_left, in_right)
            }
        }
    }

    /// Built-in formulas need only the candidate size and its wing overlaps;
    /// callers that already merged the sets can skip the second merge.
    /// Panics for custom functions.
    pub fn evaluate_with_overlap(
        &self,
        parts: &WedgeParts,
        edge_len: usize,
        in_left: usize,
        in_right: usize,
    ) -> f64 {
        let nl = parts.left.len();
        let nr = parts.right.len();
        let numer = (in_left * in_right) as f64;
        match self {
            ScoreFunction::Coverage => numer / (nl * nr) as f64,
            ScoreFunction::Penalized => {
                // |L ∪ (e\R)| = |L| + |e| - |e∩L| - |e∩R|, since L and R are
                // disjoint and e\R adds only nodes outside both intersections.
                let denom_l = (nl + edge_len - in_left - in_right) as f64;
                let denom_r = (nr + edge_len - in_left - in_right) as f64;
                numer / (denom_l * denom_r)
            }
            ScoreFunction::Custom(_) => {
                panic!("custom score functions need the full candidate node set")
            }
        }
    }

    pub fn is_custom(&self) -> bool {
        matches!(self, ScoreFunction::Custom(_))
    }
}

/// Coverage score `|L∩e|·|R∩e| / (|L|·|R|)`.
pub fn f_coverage(parts: &WedgeParts, e: &[NodeId]) -> f64 {
    ScoreFunction::Coverage.evaluate(parts, e)
}

/// Penalized score `|L∩e|·|R∩e| / (|L∪(e\R)|·|R∪(e\L)|)`.
pub fn f_penalized(parts: &WedgeParts, e: &[NodeId]) -> f64 {
    ScoreFunction::Penalized.evaluate(parts, e)
}

/// The six goodness properties, in their published order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GoodnessProperty {
    /// 1: scores lie in [0, 1].
    Bounded,
    /// 2: overlapping candidates score strictly above zero.
    PositiveOnOverlap,
    /// 3: a score of 1 implies the candidate contains both wings.
    OneImpliesWingCover,
    /// 4: the exact wing union scores 1.
    WingUnionScoresOne,
    /// 5: enlarging a candidate with wing nodes never lowers the score.
    MonotoneUnderEnlargement,
    /// 6: enlargement is strictly increasing when the result overlaps.
    StrictlyMonotoneWhenOverlapping,
}

impl GoodnessProperty {
    pub fn name(self) -> &'static str {
        match self {
            GoodnessProperty::Bounded => "bounded",
            GoodnessProperty::PositiveOnOverlap => "positive-on-overlap",
            GoodnessProperty::OneImpliesWingCover => "one-implies-wing-cover",
            GoodnessProperty::WingUnionScoresOne => "wing-union-scores-one",
            GoodnessProperty::MonotoneUnderEnlargement => "monotone-under-enlargement",
            GoodnessProperty::StrictlyMonotoneWhenOverlapping => "strictly-monotone-overlapping",
        }
    }
}

pub const ALL_PROPERTIES: [GoodnessProperty; 6] = [
    GoodnessProperty::Bounded,
    GoodnessProperty::PositiveOnOverlap,
    GoodnessProperty::OneImpliesWingCover,
    GoodnessProperty::WingUnionScoresOne,
    GoodnessProperty::MonotoneUnderEnlargement,
    GoodnessProperty::StrictlyMonotoneWhenOverlapping,
];

/// A reproducible witness to a property violation.
#[derive(Debug, Clone, Serialize)]
pub struct GoodnessCounterexample {
    pub property: GoodnessProperty,
    pub left: Vec<NodeId>,
    pub right: Vec<NodeId>,
    pub body: Vec<NodeId>,
    pub edge: Vec<NodeId>,
    /// Present for the two enlargement properties.
    pub enlarged_edge: Option<Vec<NodeId>>,
    pub score: f64,
    pub enlarged_score: Option<f64>,
}

impl GoodnessCounterexample {
    fn parts(&self) -> WedgeParts {
        WedgeParts {
            left: self.left.clone(),
            right: self.right.clone(),
            body: self.body.clone(),
        }
    }

    /// Re-evaluates the witness; true when the violation still holds.
    pub fn replay(&self, f: &ScoreFunction) -> bool {
        let parts = self.parts();
        let s = f.evaluate(&parts, &self.edge);
        match self.property {
            GoodnessProperty::Bounded => !(-TOL..=1.0 + TOL).contains(&s),
            GoodnessProperty::PositiveOnOverlap => s <= TOL,
            GoodnessProperty::OneImpliesWingCover => {
                (s - 1.0).abs() <= TOL && !contains_all(&self.edge, &parts.left, &parts.right)
            }
            GoodnessProperty::WingUnionScoresOne => (s - 1.0).abs() > TOL,
            GoodnessProperty::MonotoneUnderEnlargement => {
                let s2 = f.evaluate(&parts, self.enlarged_edge.as_ref().unwrap());
                s > s2 + TOL
            }
            GoodnessProperty::StrictlyMonotoneWhenOverlapping => {
                let s2 = f.evaluate(&parts, self.enlarged_edge.as_ref().unwrap());
                s2 - s <= TOL
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum PropertyVerdict {
    Pass,
    Violated(GoodnessCounterexample),
}

impl PropertyVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, PropertyVerdict::Pass)
    }
}

/// Outcome of a randomized goodness check: one verdict per property.
#[derive(Debug, Clone, Serialize)]
pub struct GoodnessReport {
    pub verdicts: Vec<(GoodnessProperty, PropertyVerdict)>,
    pub trials: u64,
    pub seed: u64,
}

impl GoodnessReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.passed())
    }

    pub fn verdict(&self, p: GoodnessProperty) -> &PropertyVerdict {
        &self.verdicts.iter().find(|(q, _)| *q == p).unwrap().1
    }
}

const TOL: f64 = 1e-12;

/// Randomized check of the six goodness properties. For each property,
/// `trials` instances are sampled honoring the property's hypothesis and the
/// conclusion is asserted; the first violation per property is recorded as a
/// replayable counterexample. Deterministic for a fixed seed.
pub fn check_goodness(f: &ScoreFunction, trials: u64, seed: u64) -> GoodnessReport {
    assert!(trials >= 1);
    let mut verdicts = Vec::with_capacity(6);
    for (k, prop) in ALL_PROPERTIES.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        let mut verdict = PropertyVerdict::Pass;
        for _ in 0..trials {
            if let Some(cx) = run_trial(f, prop, &mut rng) {
                verdict = PropertyVerdict::Violated(cx);
                break;
            }
        }
        verdicts.push((prop, verdict));
    }
    GoodnessReport {
        verdicts,
        trials,
        seed,
    }
}

/// Random wedge over a 20-id node universe (ids 16..20 are reserved for
/// external nodes): wings of 1..=6 nodes, body of 1..=3.
fn sample_parts(rng: &mut ChaCha8Rng) -> WedgeParts {
    let nl = rng.gen_range(1..=6usize);
    let nr = rng.gen_range(1..=6usize);
    let nb = rng.gen_range(1..=3usize);
    let mut ids: Vec<NodeId> = (0..16).collect();
    for i in (1..ids.len()).rev() {
        ids.swap(i, rng.gen_range(0..=i));
    }
    let mut take = |n: usize| {
        let mut v: Vec<NodeId> = ids.split_off(ids.len() - n);
        v.sort_unstable();
        v
    };
    WedgeParts {
        left: take(nl),
        right: take(nr),
        body: take(nb),
    }
}

/// Edge built by per-node inclusion coin flips over wings, body, and the
/// external ids, then patched non-empty.
fn sample_edge(parts: &WedgeParts, rng: &mut ChaCha8Rng) -> Vec<NodeId> {
    let mut pool: Vec<NodeId> = parts
        .left
        .iter()
        .chain(parts.right.iter())
        .chain(parts.body.iter())
        .copied()
        .collect();
    pool.extend(16..20u32); // external nodes
    let mut e: Vec<NodeId> = pool.into_iter().filter(|_| rng.gen_bool(0.35)).collect();
    if e.is_empty() {
        e.push(*pick(&parts.left, rng));
    }
    e.sort_unstable();
    e.dedup();
    e
}

fn pick<'a>(xs: &'a [NodeId], rng: &mut ChaCha8Rng) -> &'a NodeId {
    &xs[rng.gen_range(0..xs.len())]
}

fn insert_sorted(e: &mut Vec<NodeId>, v: NodeId) {
    if let Err(at) = e.binary_search(&v) {
        e.insert(at, v);
    }
}

fn contains_all(e: &[NodeId], left: &[NodeId], right: &[NodeId]) -> bool {
    left.iter()
        .chain(right.iter())
        .all(|v| e.binary_search(v).is_ok())
}

fn wing_union(parts: &WedgeParts) -> Vec<NodeId> {
    let mut u: Vec<NodeId> = parts
        .left
        .iter()
        .chain(parts.right.iter())
        .copied()
        .collect();
    u.sort_unstable();
    u
}

fn run_trial(
    f: &ScoreFunction,
    prop: GoodnessProperty,
    rng: &mut ChaCha8Rng,
) -> Option<GoodnessCounterexample> {
    let parts = sample_parts(rng);
    let witness = |edge: Vec<NodeId>, enlarged: Option<Vec<NodeId>>, s: f64, s2: Option<f64>| {
        GoodnessCounterexample {
            property: prop,
            left: parts.left.clone(),
            right: parts.right.clone(),
            body: parts.body.clone(),
            edge,
            enlarged_edge: enlarged,
            score: s,
            enlarged_score: s2,
        }
    };
    match prop {
        GoodnessProperty::Bounded => {
            let e = sample_edge(&parts, rng);
            let s = f.evaluate(&parts, &e);
            (!(-TOL..=1.0 + TOL).contains(&s) || !s.is_finite()).then(|| witness(e, None, s, None))
        }
        GoodnessProperty::PositiveOnOverlap => {
            // patch the sampled edge so it overlaps both wings
            let mut e = sample_edge(&parts, rng);
            insert_sorted(&mut e, *pick(&parts.left, rng));
            insert_sorted(&mut e, *pick(&parts.right, rng));
            let s = f.evaluate(&parts, &e);
            (s <= TOL).then(|| witness(e, None, s, None))
        }
        GoodnessProperty::OneImpliesWingCover => {
            // mix plain samples with near-maximal ones so the hypothesis
            // (score exactly 1) is actually reached
            let mut e = if rng.gen_bool(0.5) {
                sample_edge(&parts, rng)
            } else {
                wing_union(&parts)
            };
            if rng.gen_bool(0.3) {
                let at = rng.gen_range(0..e.len());
                e.remove(at);
                if e.is_empty() {
                    return None;
                }
            }
            let s = f.evaluate(&parts, &e);
            if (s - 1.0).abs() <= TOL && !contains_all(&e, &parts.left, &parts.right) {
                Some(witness(e, None, s, None))
            } else {
                None
            }
        }
        GoodnessProperty::WingUnionScoresOne => {
            let e = wing_union(&parts);
            let s = f.evaluate(&parts, &e);
            ((s - 1.0).abs() > TOL).then(|| witness(e, None, s, None))
        }
        GoodnessProperty::MonotoneUnderEnlargement => {
            let e = sample_edge(&parts, rng);
            let mut grown = e.clone();
            for v in wing_union(&parts) {
                if rng.gen_bool(0.5) {
                    insert_sorted(&mut grown, v);
                }
            }
            let s = f.evaluate(&parts, &e);
            let s2 = f.evaluate(&parts, &grown);
            (s > s2 + TOL).then(|| witness(e, Some(grown), s, Some(s2)))
        }
        GoodnessProperty::StrictlyMonotoneWhenOverlapping => {
            let e = sample_edge(&parts, rng);
            let mut grown = e.clone();
            // force the enlarged edge to overlap both wings and to be a
            // strict superset built only from wing nodes
            insert_sorted(&mut grown, *pick(&parts.left, rng));
            insert_sorted(&mut grown, *pick(&parts.right, rng));
            for v in wing_union(&parts) {
                if rng.gen_bool(0.3) {
                    insert_sorted(&mut grown, v);
                }
            }
            if grown.len() == e.len() {
                return None; // nothing was added; hypothesis not met
            }
            let s = f.evaluate(&parts, &e);
            let s2 = f.evaluate(&parts, &grown);
            (s2 - s <= TOL).then(|| witness(e, Some(grown), s, Some(s2)))
        }
    }
}
