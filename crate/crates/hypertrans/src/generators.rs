//! Synthetic hypergraph generators.
//!
//! Three models, all deterministic per seed:
//!
//! * [`generate_thera`] — the hierarchical community generator. Nodes are
//!   placed level by level (level `T` holds `C * T^beta` nodes split into
//!   communities of `C`); each node anchors a quota of hyperedges built
//!   either inside its own community (probability `p`) or by hierarchical
//!   sampling, where a node at level `l` is drawn with probability
//!   proportional to `alpha^-l`. Small communities raise transitivity;
//!   the level bias yields skewed degree distributions.
//! * [`generate_naive_thera`] — communities only: every hyperedge is drawn
//!   uniformly inside one block of `C` consecutive nodes.
//! * [`generate_hypercl`] — the null model: hyperedge sizes are prescribed
//!   and members are drawn with probability proportional to a weight vector,
//!   so expected node degrees track the weights.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, NodeId};

#[derive(Debug, Error)]
pub enum GeneratorError {
    #[error(
        "edge budget infeasible: {nodes} nodes need at least {minimum} hyperedges, got {requested}"
    )]
    BudgetInfeasible {
        nodes: u32,
        requested: u64,
        minimum: u64,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("hyperedge size {size} exceeds the {available} nodes with positive weight")]
    InfeasibleSize { size: usize, available: usize },
    #[error("invalid size distribution: {0}")]
    InvalidSizeDistribution(String),
}

/// Expected number of hyperedges per size. Sizes are at least 2; the total
/// is the number of hyperedges a generator will emit.
#[derive(Debug, Clone, Serialize)]
pub struct SizeDistribution {
    /// (size, expected count), ascending by size.
    counts: Vec<(u32, u64)>,
    /// Cumulative counts for integer-exact categorical sampling.
    cumulative: Vec<u64>,
    total: u64,
}

impl SizeDistribution {
    pub fn new(counts: impl IntoIterator<Item = (u32, u64)>) -> Result<Self, GeneratorError> {
        let mut merged = std::collections::BTreeMap::new();
        for (size, count) in counts {
            if size < 2 {
                return Err(GeneratorError::InvalidSizeDistribution(format!(
                    "hyperedge size {size} < 2"
                )));
            }
            if count > 0 {
                *merged.entry(size).or_insert(0u64) += count;
            }
        }
        let counts: Vec<(u32, u64)> = merged.into_iter().collect();
        let mut cumulative = Vec::with_capacity(counts.len());
        let mut total = 0u64;
        for &(_, c) in &counts {
            total += c;
            cumulative.push(total);
        }
        if total == 0 {
            return Err(GeneratorError::InvalidSizeDistribution(
                "no hyperedges requested".into(),
            ));
        }
        Ok(SizeDistribution {
            counts,
            cumulative,
            total,
        })
    }

    /// Histogram of hyperedge sizes of an existing hypergraph; lossless for
    /// re-generation at the same scale.
    pub fn from_hypergraph(h: &Hypergraph) -> Result<Self, GeneratorError> {
        let mut map = std::collections::BTreeMap::new();
        for e in h.edges() {
            *map.entry(e.len() as u32).or_insert(0u64) += 1;
        }
        SizeDistribution::new(map)
    }

    /// Parses "size count" lines (whitespace separated, '#' comments).
    pub fn from_text(text: &str) -> Result<Self, GeneratorError> {
        let mut counts = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut it = t.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<u64, GeneratorError> {
                tok.and_then(|x| x.parse().ok()).ok_or_else(|| {
                    GeneratorError::InvalidSizeDistribution(format!(
                        "line {}: expected \"size count\"",
                        lineno + 1
                    ))
                })
            };
            let size = parse(it.next())? as u32;
            let count = parse(it.next())?;
            counts.push((size, count));
        }
        SizeDistribution::new(counts)
    }

    /// Total number of hyperedges, `m`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn max_size(&self) -> u32 {
        self.counts.last().map(|&(s, _)| s).unwrap_or(0)
    }

    pub fn counts(&self) -> &[(u32, u64)] {
        &self.counts
    }

    /// Sizes are expected counts, so sampling is i.i.d. categorical with the
    /// counts as integer weights, not an exact depletion of the histogram.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> u32 {
        let draw = rng.gen_range(0..self.total);
        let at = self.cumulative.partition_point(|&c| c <= draw);
        self.counts[at].0
    }
}

/// Parameters of the hierarchical community generator.
#[derive(Debug, Clone, Serialize)]
pub struct TheraParams {
    pub nodes: u32,
    pub sizes: SizeDistribution,
    /// Nodes per community, `C`.
    pub community_size: u32,
    /// Probability that a hyperedge is intra-community, `p`.
    pub intra_ratio: f64,
    /// Level-sampling coefficient; level `l` carries weight `alpha^-l`.
    pub alpha: f64,
    /// Level-size exponent; level `T` holds `C * T^beta` nodes.
    pub beta: u32,
    pub seed: u64,
}

impl TheraParams {
    fn validate(&self) -> Result<(), GeneratorError> {
        if self.nodes < 2 {
            return Err(GeneratorError::InvalidParams(
                "need at least 2 nodes".into(),
            ));
        }
        if self.community_size < 1 {
            return Err(GeneratorError::InvalidParams(
                "community size must be >= 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.intra_ratio) {
            return Err(GeneratorError::InvalidParams(
                "intra ratio must lie in [0, 1]".into(),
            ));
        }
        if self.alpha.is_nan() || self.alpha < 1.0 {
            return Err(GeneratorError::InvalidParams("alpha must be >= 1".into()));
        }
        if self.beta < 1 {
            return Err(GeneratorError::InvalidParams("beta must be >= 1".into()));
        }
        Ok(())
    }
}

/// Half-open node-id range of one level.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct LevelSpan {
    pub start: u32,
    pub len: u32,
}

impl LevelSpan {
    fn contains(&self, v: NodeId) -> bool {
        v >= self.start && v < self.start + self.len
    }
}

/// Generation sidecar: the level layout plus counters for events that bent
/// the requested parameters.
#[derive(Debug, Clone, Serialize)]
pub struct TheraMetadata {
    pub levels: Vec<LevelSpan>,
    pub community_size: u32,
    pub intra_ratio: f64,
    pub alpha: f64,
    pub beta: u32,
    pub seed: u64,
    /// Hyperedges whose size was clamped to the number of placed nodes.
    pub clamp_events: u64,
}

impl TheraMetadata {
    /// Level of a node, by scan over the (few) level spans.
    pub fn level_of(&self, v: NodeId) -> usize {
        self.levels
            .iter()
            .position(|s| s.contains(v))
            .expect("node ids lie inside the level partition")
    }

    /// Community block of a node: ids `[start, start+C)` within its level.
    /// Node 0 sits alone at level 0.
    pub fn community_of(&self, v: NodeId) -> (u32, u32) {
        if v == 0 {
            return (0, 1);
        }
        let c = self.community_size;
        let start = ((v - 1) / c) * c + 1;
        let level = &self.levels[self.level_of(v)];
        let end = (start + c).min(level.start + level.len);
        (start, end - start)
    }
}

pub struct TheraOutput {
    pub hypergraph: Hypergraph,
    pub metadata: TheraMetadata,
}

/// Distributes `m` hyperedge anchors over nodes `1..n`: every node except
/// node 0 anchors at least one hyperedge, and the surplus goes to uniformly
/// random nodes.
pub fn assign_edge_budget(
    n: u32,
    m: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u32>, GeneratorError> {
    let minimum = (n - 1) as u64;
    if m < minimum {
        return Err(GeneratorError::BudgetInfeasible {
            nodes: n,
            requested: m,
            minimum,
        });
    }
    let mut budget = vec![1u32; n as usize];
    budget[0] = 0;
    let mut assigned = minimum;
    while assigned < m {
        let a = rng.gen_range(1..n) as usize;
        budget[a] += 1;
        assigned += 1;
    }
    Ok(budget)
}

/// Level weights for hierarchical sampling: `alpha^-l * |level l|`,
/// cumulated for binary-search draws. Rebuilt once per level opening.
fn cumulative_level_weights(levels: &[LevelSpan], alpha: f64) -> Vec<f64> {
    let mut cum = Vec::with_capacity(levels.len());
    let mut acc = 0.0;
    for (l, span) in levels.iter().enumerate() {
        acc += alpha.powi(-(l as i32)) * span.len as f64;
        cum.push(acc);
    }
    cum
}

/// Fills `edge` up to `target` nodes by sampling a level proportionally to
/// the cumulative weights, then a uniform node within it. Node draws already
/// present in the edge simply don't grow it.
fn hierarchical_generate(
    edge: &mut Vec<NodeId>,
    target: usize,
    levels: &[LevelSpan],
    cum_weights: &[f64],
    rng: &mut ChaCha8Rng,
) {
    let total = *cum_weights.last().expect("at least level 0 exists");
    while edge.len() < target {
        let draw = rng.gen::<f64>() * total;
        let l = cum_weights
            .partition_point(|&c| c <= draw)
            .min(levels.len() - 1);
        let span = levels[l];
        let v = span.start + rng.gen_range(0..span.len);
        if !edge.contains(&v) {
            edge.push(v);
        }
    }
}

/// Adds up to `s - 1` distinct community mates of the anchor (the last level
/// is allowed a short community; a short community simply yields fewer
/// mates).
fn intra_community_generate(
    edge: &mut Vec<NodeId>,
    anchor: NodeId,
    meta_levels: &[LevelSpan],
    community_size: u32,
    s: usize,
    rng: &mut ChaCha8Rng,
) {
    let level = meta_levels
        .iter()
        .position(|span| span.contains(anchor))
        .expect("anchor is placed");
    let span = meta_levels[level];
    let block_start = ((anchor - 1) / community_size) * community_size + 1;
    let block_end = (block_start + community_size).min(span.start + span.len);
    let mut mates: Vec<NodeId> = (block_start..block_end).filter(|&v| v != anchor).collect();
    let want = (s.saturating_sub(1)).min(mates.len());
    // partial Fisher-Yates: uniform sample without replacement
    for i in 0..want {
        let j = rng.gen_range(i..mates.len());
        mates.swap(i, j);
        edge.push(mates[i]);
    }
}

/// The hierarchical community generator. Emits exactly `sizes.total()`
/// hyperedges over `params.nodes` nodes; node 0 anchors nothing and is only
/// reached through hierarchical draws.
pub fn generate_thera(params: &TheraParams) -> Result<TheraOutput, GeneratorError> {
    params.validate()?;
    let n = params.nodes;
    let m = params.sizes.total();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let budget = assign_edge_budget(n, m, &mut rng)?;

    let mut edges: Vec<Vec<NodeId>> = Vec::with_capacity(m as usize);
    let mut levels = vec![LevelSpan { start: 0, len: 1 }];
    let mut clamp_events = 0u64;
    let mut placed = 1u32;
    let mut level = 0u32;

    while placed < n {
        level += 1;
        let capacity = (params.community_size as u128)
            .saturating_mul((level as u128).saturating_pow(params.beta));
        let len = capacity.min((n - placed) as u128) as u32;
        levels.push(LevelSpan { start: placed, len });
        let cum_weights = cumulative_level_weights(&levels, params.alpha);
        let first = placed;
        placed += len;
        for anchor in first..first + len {
            for _ in 0..budget[anchor as usize] {
                let mut edge = vec![anchor];
                let s = params.sizes.sample(&mut rng) as usize;
                let q: f64 = rng.gen();
                if q < params.intra_ratio {
                    intra_community_generate(
                        &mut edge,
                        anchor,
                        &levels,
                        params.community_size,
                        s,
                        &mut rng,
                    );
                }
                let target = s.min(placed as usize);
                if s > placed as usize {
                    clamp_events += 1;
                }
                if edge.len() < target {
                    hierarchical_generate(&mut edge, target, &levels, &cum_weights, &mut rng);
                }
                edges.push(edge);
            }
        }
    }

    Ok(TheraOutput {
        hypergraph: Hypergraph::from_parts(n, edges),
        metadata: TheraMetadata {
            levels,
            community_size: params.community_size,
            intra_ratio: params.intra_ratio,
            alpha: params.alpha,
            beta: params.beta,
            seed: params.seed,
            clamp_events,
        },
    })
}

/// Community-only generator: nodes are split into consecutive blocks of
/// `community_size` and every hyperedge is an anchor plus uniform distinct
/// mates from the anchor's block. Sizes larger than the block clamp to it.
pub fn generate_naive_thera(
    n: u32,
    sizes: &SizeDistribution,
    community_size: u32,
    seed: u64,
) -> Result<Hypergraph, GeneratorError> {
    if n < 2 || community_size < 1 {
        return Err(GeneratorError::InvalidParams(
            "need at least 2 nodes and a positive community size".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = sizes.total();
    let mut edges: Vec<Vec<NodeId>> = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let anchor = rng.gen_range(0..n);
        let s = sizes.sample(&mut rng) as usize;
        let block_start = (anchor / community_size) * community_size;
        let block_end = (block_start + community_size).min(n);
        let mut mates: Vec<NodeId> = (block_start..block_end).filter(|&v| v != anchor).collect();
        let want = (s - 1).min(mates.len());
        let mut edge = vec![anchor];
        for i in 0..want {
            let j = rng.gen_range(i..mates.len());
            mates.swap(i, j);
            edge.push(mates[i]);
        }
        edges.push(edge);
    }
    Ok(Hypergraph::from_parts(n, edges))
}

/// Null model preserving expected degrees: each hyperedge of the prescribed
/// size draws distinct nodes with probability proportional to `weights`
/// (weighted draw with duplicate rejection). No hyperedge dedup is applied.
pub fn generate_hypercl(
    weights: &[f64],
    sizes: &[u32],
    seed: u64,
) -> Result<Hypergraph, GeneratorError> {
    if weights.is_empty() || weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
        return Err(GeneratorError::InvalidParams(
            "weights must be non-negative and finite".into(),
        ));
    }
    let positive = weights.iter().filter(|&&w| w > 0.0).count();
    let mut cum = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for &w in weights {
        acc += w;
        cum.push(acc);
    }
    if acc <= 0.0 {
        return Err(GeneratorError::InvalidParams("all weights are zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<NodeId>> = Vec::with_capacity(sizes.len());
    for &s in sizes {
        let s = s as usize;
        if s > positive {
            return Err(GeneratorError::InfeasibleSize {
                size: s,
                available: positive,
            });
        }
        let mut edge: Vec<NodeId> = Vec::with_capacity(s);
        while edge.len() < s {
            let draw = rng.gen::<f64>() * acc;
            let v = cum.partition_point(|&c| c <= draw).min(weights.len() - 1) as NodeId;
            if !edge.contains(&v) {
                edge.push(v);
            }
        }
        edges.push(edge);
    }
    Ok(Hypergraph::from_parts(weights.len() as u32, edges))
}

/// HyperCL counterpart of an existing hypergraph: weights are its realized
/// node degrees and sizes are its hyperedge sizes.
pub fn hypercl_counterpart(h: &Hypergraph, seed: u64) -> Result<Hypergraph, GeneratorError> {
    let weights: Vec<f64> = (0..h.used_node_count() as NodeId)
        .map(|v| h.degree(v) as f64)
        .collect();
    let sizes: Vec<u32> = h.edges().iter().map(|e| e.len() as u32).collect();
    generate_hypercl(&weights, &sizes, seed)
}

/// Alias for [`SizeDistribution::from_hypergraph`], the extraction direction.
pub fn size_distribution_from(h: &Hypergraph) -> Result<SizeDistribution, GeneratorError> {
    SizeDistribution::from_hypergraph(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interaction::ScoreFunction;
    use crate::measures::{self, MeasureKind};
    use crate::util::derive_seed;

    fn sizes(pairs: &[(u32, u64)]) -> SizeDistribution {
        SizeDistribution::new(pairs.iter().copied()).unwrap()
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn budget_base_assignment() {
        let b = assign_edge_budget(3, 2, &mut rng(1)).unwrap();
        assert_eq!(b, vec![0, 1, 1]);
    }

    #[test]
    fn budget_surplus_and_invariants() {
        let b = assign_edge_budget(3, 5, &mut rng(2)).unwrap();
        assert_eq!(b[0], 0);
        assert!(b[1..].iter().all(|&x| x >= 1));
        assert_eq!(b.iter().map(|&x| x as u64).sum::<u64>(), 5);
    }

    #[test]
    fn budget_infeasible_reports_minimum() {
        match assign_edge_budget(10, 3, &mut rng(3)) {
            Err(GeneratorError::BudgetInfeasible { minimum, .. }) => assert_eq!(minimum, 9),
            other => panic!("expected infeasible budget, got {other:?}"),
        }
    }

    /// The surplus is a uniform multinomial over nodes 1..n; chi-square per
    /// degree of freedom should sit near 1.
    #[test]
    fn budget_surplus_is_uniform() {
        let n = 10_000u32;
        let m = 100_000u64;
        let b = assign_edge_budget(n, m, &mut rng(4)).unwrap();
        let expected = (m - (n as u64 - 1)) as f64 / (n as f64 - 1.0);
        let chi2: f64 = b[1..]
            .iter()
            .map(|&x| {
                let d = (x - 1) as f64 - expected;
                d * d / expected
            })
            .sum();
        let per_df = chi2 / (n as f64 - 2.0);
        assert!((0.85..1.15).contains(&per_df), "chi2/df = {per_df}");
    }

    fn toy_levels() -> Vec<LevelSpan> {
        // C = 5, beta = 1: level 0 = {0}, level 1 = {1..5}, level 2 = {6..15}
        vec![
            LevelSpan { start: 0, len: 1 },
            LevelSpan { start: 1, len: 5 },
            LevelSpan { start: 6, len: 10 },
        ]
    }

    #[test]
    fn intra_community_of_first_level_node() {
        let levels = toy_levels();
        let mut r = rng(5);
        for _ in 0..100 {
            let mut edge = vec![1];
            intra_community_generate(&mut edge, 1, &levels, 5, 3, &mut r);
            assert_eq!(edge.len(), 3);
            assert!(edge.iter().all(|&v| (1..=5).contains(&v)));
            assert_eq!(edge[0], 1);
        }
    }

    #[test]
    fn intra_size_one_keeps_anchor_only() {
        let levels = toy_levels();
        let mut edge = vec![2];
        intra_community_generate(&mut edge, 2, &levels, 5, 1, &mut rng(6));
        assert_eq!(edge, vec![2]);
    }

    #[test]
    fn intra_clamps_to_whole_community() {
        let levels = toy_levels();
        let mut edge = vec![3];
        intra_community_generate(&mut edge, 3, &levels, 5, 50, &mut rng(7));
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn intra_respects_short_last_community() {
        // level 2 cut short: block of node 13 is {11..15} but the level ends
        // at 13
        let levels = vec![
            LevelSpan { start: 0, len: 1 },
            LevelSpan { start: 1, len: 10 },
            LevelSpan { start: 11, len: 3 },
        ];
        let mut edge = vec![12];
        intra_community_generate(&mut edge, 12, &levels, 10, 9, &mut rng(8));
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![11, 12, 13]);
    }

    #[test]
    fn hierarchical_single_level_is_uniform() {
        let levels = vec![LevelSpan { start: 0, len: 50 }];
        let cum = cumulative_level_weights(&levels, 1.0);
        let mut counts = vec![0u64; 50];
        let mut r = rng(9);
        for _ in 0..20_000 {
            let mut edge = Vec::new();
            hierarchical_generate(&mut edge, 1, &levels, &cum, &mut r);
            counts[edge[0] as usize] += 1;
        }
        let expected = 20_000.0 / 50.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 / 49.0 < 1.5, "chi2/df = {}", chi2 / 49.0);
    }

    /// Per-node selection frequency decays by a factor alpha per level.
    #[test]
    fn hierarchical_level_bias_matches_alpha() {
        let levels = toy_levels();
        let alpha = 2.0;
        let cum = cumulative_level_weights(&levels, alpha);
        let mut per_node = [0u64; 16];
        let mut r = rng(10);
        let draws = 400_000;
        for _ in 0..draws {
            let mut edge = Vec::new();
            hierarchical_generate(&mut edge, 1, &levels, &cum, &mut r);
            per_node[edge[0] as usize] += 1;
        }
        let mean = |span: LevelSpan| {
            (span.start..span.start + span.len)
                .map(|v| per_node[v as usize] as f64)
                .sum::<f64>()
                / span.len as f64
        };
        let l1 = mean(levels[1]);
        let l2 = mean(levels[2]);
        let ratio = l1 / l2;
        assert!(
            (ratio - alpha).abs() < 0.25,
            "level-1/level-2 frequency ratio {ratio}, expected ~{alpha}"
        );
        // level 0 weight is alpha^0 * 1, so node 0 is drawn like a level-0
        // singleton: frequency ~ twice a level-1 node's
        let l0 = per_node[0] as f64;
        assert!((l0 / l1 - alpha).abs() < 0.3);
    }

    #[test]
    fn thera_emits_exactly_m_edges_deterministically() {
        let params = TheraParams {
            nodes: 200,
            sizes: sizes(&[(3, 400), (4, 100)]),
            community_size: 10,
            intra_ratio: 0.8,
            alpha: 2.0,
            beta: 2,
            seed: 77,
        };
        let a = generate_thera(&params).unwrap();
        let b = generate_thera(&params).unwrap();
        assert_eq!(a.hypergraph.edge_count(), 500);
        assert_eq!(a.hypergraph.edges(), b.hypergraph.edges());
        assert_eq!(a.metadata.levels, b.metadata.levels);
    }

    #[test]
    fn thera_level_structure() {
        let params = TheraParams {
            nodes: 1000,
            sizes: sizes(&[(3, 1200)]),
            community_size: 10,
            intra_ratio: 0.5,
            alpha: 2.0,
            beta: 2,
            seed: 1,
        };
        let out = generate_thera(&params).unwrap();
        let levels = &out.metadata.levels;
        assert_eq!(levels[0], LevelSpan { start: 0, len: 1 });
        let mut placed = 1u32;
        for (l, span) in levels.iter().enumerate().skip(1) {
            let expect = (10u64 * (l as u64).pow(2)).min((1000 - placed) as u64) as u32;
            assert_eq!(span.len, expect, "level {l}");
            assert_eq!(span.start, placed);
            placed += span.len;
        }
        assert_eq!(placed, 1000);
    }

    #[test]
    fn thera_fully_intra_when_p_is_one() {
        let params = TheraParams {
            nodes: 100,
            sizes: sizes(&[(3, 200)]),
            community_size: 10,
            intra_ratio: 1.0,
            alpha: 2.0,
            beta: 2,
            seed: 5,
        };
        let out = generate_thera(&params).unwrap();
        let intra = out
            .hypergraph
            .edges()
            .iter()
            .filter(|e| {
                let (start, len) = out.metadata.community_of(e[0]);
                e.iter().all(|&v| v >= start && v < start + len)
            })
            .count();
        let frac = intra as f64 / out.hypergraph.edge_count() as f64;
        assert!(frac >= 0.95, "intra fraction {frac}");
    }

    #[test]
    fn thera_p_zero_spans_communities() {
        let params = TheraParams {
            nodes: 100,
            sizes: sizes(&[(4, 300)]),
            community_size: 5,
            intra_ratio: 0.0,
            alpha: 1.0,
            beta: 2,
            seed: 5,
        };
        let out = generate_thera(&params).unwrap();
        let meta = &out.metadata;
        let crossing = out
            .hypergraph
            .edges()
            .iter()
            .filter(|e| {
                let (start, len) = meta.community_of(e[0]);
                e.iter().any(|&v| v < start || v >= start + len)
            })
            .count();
        assert!(
            crossing > out.hypergraph.edge_count() / 2,
            "hierarchical edges should usually span communities"
        );
    }

    #[test]
    fn thera_size_histogram_tracks_the_distribution() {
        let dist = sizes(&[(2, 2000), (3, 5000), (5, 2000), (9, 1000)]);
        let mut worst: f64 = 0.0;
        for seed in 0..5u64 {
            let params = TheraParams {
                nodes: 2000,
                sizes: dist.clone(),
                community_size: 10,
                intra_ratio: 0.5,
                alpha: 2.0,
                beta: 2,
                seed,
            };
            let out = generate_thera(&params).unwrap();
            let mut hist = std::collections::BTreeMap::new();
            for e in out.hypergraph.edges() {
                *hist.entry(e.len() as u32).or_insert(0u64) += 1;
            }
            // sup gap between the two size CDFs
            let m = dist.total() as f64;
            let mut cdf_expect = 0.0;
            let mut cdf_got = 0.0;
            let mut gap: f64 = 0.0;
            for &(size, count) in dist.counts() {
                cdf_expect += count as f64 / m;
                cdf_got += *hist.get(&size).unwrap_or(&0) as f64 / m;
                gap = gap.max((cdf_expect - cdf_got).abs());
            }
            worst = worst.max(gap);
        }
        assert!(worst < 0.05, "size-distribution KS distance {worst}");
    }

    /// Even at alpha = 1 early levels collect more degree (they are exposed
    /// to more anchors); adjacent levels may nearly tie, so first-vs-last is
    /// the robust check alongside a small per-step slack.
    #[test]
    fn thera_degree_non_increasing_at_alpha_one() {
        let mut level_means = vec![0.0f64; 4];
        let seeds = 5u64;
        for seed in 0..seeds {
            let params = TheraParams {
                nodes: 1500,
                sizes: sizes(&[(3, 10000), (4, 5000)]),
                community_size: 10,
                intra_ratio: 0.5,
                alpha: 1.0,
                beta: 2,
                seed: derive_seed(200, seed),
            };
            let out = generate_thera(&params).unwrap();
            for (i, span) in out.metadata.levels[1..=4].iter().enumerate() {
                level_means[i] += (span.start..span.start + span.len)
                    .map(|v| out.hypergraph.degree(v) as f64)
                    .sum::<f64>()
                    / span.len as f64
                    / seeds as f64;
            }
        }
        assert!(
            level_means[0] > level_means[3],
            "first level must outdegree the last: {level_means:?}"
        );
        for w in level_means.windows(2) {
            assert!(
                w[1] <= w[0] * 1.05,
                "levels not non-increasing: {level_means:?}"
            );
        }
    }

    /// Mean realized degree decreases with the level index (alpha = beta = 2).
    #[test]
    fn thera_degree_decreases_across_levels() {
        for seed in 0..3u64 {
            let params = TheraParams {
                nodes: 1500,
                sizes: sizes(&[(3, 10000), (4, 5000)]),
                community_size: 10,
                intra_ratio: 0.5,
                alpha: 2.0,
                beta: 2,
                seed: derive_seed(100, seed),
            };
            let out = generate_thera(&params).unwrap();
            let means: Vec<f64> = out.metadata.levels[1..=4]
                .iter()
                .map(|span| {
                    (span.start..span.start + span.len)
                        .map(|v| out.hypergraph.degree(v) as f64)
                        .sum::<f64>()
                        / span.len as f64
                })
                .collect();
            for w in means.windows(2) {
                assert!(w[0] > w[1], "level means not decreasing: {means:?}");
            }
        }
    }

    #[test]
    fn naive_thera_stays_inside_communities() {
        let h = generate_naive_thera(100, &sizes(&[(3, 500)]), 10, 3).unwrap();
        assert_eq!(h.edge_count(), 500);
        for e in h.edges() {
            let block = e[0] / 10;
            assert!(e.iter().all(|&v| v / 10 == block));
        }
    }

    #[test]
    fn naive_thera_degrees_are_near_uniform() {
        let n = 200u32;
        let h = generate_naive_thera(n, &sizes(&[(3, 2000)]), 10, 9).unwrap();
        let degrees: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
        let max = *degrees.iter().max().unwrap() as f64;
        let min = *degrees.iter().min().unwrap().max(&1) as f64;
        assert!(max / min < 3.0, "degree spread {max}/{min}");
    }

    #[test]
    fn naive_thera_transitivity_rises_as_communities_shrink() {
        let f = ScoreFunction::Penalized;
        let mut means = Vec::new();
        for &c in &[5u32, 10, 20, 40] {
            let mut acc = 0.0;
            for seed in 0..5u64 {
                let h = generate_naive_thera(
                    400,
                    &sizes(&[(3, 800)]),
                    c,
                    derive_seed(7, seed ^ (c as u64) << 8),
                )
                .unwrap();
                let loaded = Hypergraph::from_label_edges(
                    h.edges()
                        .iter()
                        .map(|e| e.iter().map(|&v| v as u64).collect())
                        .collect(),
                    true,
                )
                .unwrap();
                let (t, _) =
                    measures::graph_transitivity(&loaded, &f, MeasureKind::HyperTrans, None);
                acc += t;
            }
            means.push(acc / 5.0);
        }
        for w in means.windows(2) {
            assert!(
                w[0] > w[1],
                "transitivity should fall as C grows: {means:?}"
            );
        }
    }

    #[test]
    fn hypercl_respects_sizes_exactly() {
        let weights = vec![1.0; 50];
        let sizes: Vec<u32> = vec![2, 3, 3, 4, 5];
        let h = generate_hypercl(&weights, &sizes, 11).unwrap();
        let mut got: Vec<u32> = h.edges().iter().map(|e| e.len() as u32).collect();
        got.sort_unstable();
        let mut want = sizes.clone();
        want.sort_unstable();
        assert_eq!(got, want);
    }

    #[test]
    fn hypercl_degree_tracks_weights() {
        let mut weights = vec![1.0; 100];
        weights[0] = 10.0;
        let sizes: Vec<u32> = vec![3; 2000];
        let mut ratio_acc = 0.0;
        for seed in 0..5u64 {
            let h = generate_hypercl(&weights, &sizes, derive_seed(13, seed)).unwrap();
            let d0 = h.degree(0) as f64;
            let rest: f64 = (1..100).map(|v| h.degree(v) as f64).sum::<f64>() / 99.0;
            ratio_acc += d0 / rest;
        }
        let ratio = ratio_acc / 5.0;
        assert!((7.0..13.0).contains(&ratio), "degree ratio {ratio}");
    }

    #[test]
    fn hypercl_rejects_oversized_edges() {
        let weights = vec![1.0, 0.0, 1.0];
        assert!(matches!(
            generate_hypercl(&weights, &[3], 1),
            Err(GeneratorError::InfeasibleSize {
                size: 3,
                available: 2
            })
        ));
    }

    #[test]
    fn thera_is_more_transitive_than_its_null() {
        let params = TheraParams {
            nodes: 300,
            sizes: sizes(&[(3, 600), (4, 300)]),
            community_size: 10,
            intra_ratio: 0.8,
            alpha: 2.0,
            beta: 2,
            seed: 21,
        };
        let out = generate_thera(&params).unwrap();
        let f = ScoreFunction::Penalized;
        let reload = |h: &Hypergraph| {
            Hypergraph::from_label_edges(
                h.edges()
                    .iter()
                    .map(|e| e.iter().map(|&v| v as u64).collect())
                    .collect(),
                true,
            )
            .unwrap()
        };
        let (t_real, _) = measures::graph_transitivity(
            &reload(&out.hypergraph),
            &f,
            MeasureKind::HyperTrans,
            None,
        );
        let null = hypercl_counterpart(&out.hypergraph, 1).unwrap();
        let (t_null, _) =
            measures::graph_transitivity(&reload(&null), &f, MeasureKind::HyperTrans, None);
        assert!(
            t_real > t_null,
            "thera {t_real} should exceed null {t_null}"
        );
    }

    #[test]
    fn size_distribution_examples() {
        let h = Hypergraph::from_parts(5, vec![vec![0, 1], vec![2, 3], vec![0, 1, 2]]);
        let d = size_distribution_from(&h).unwrap();
        assert_eq!(d.counts(), &[(2, 2), (3, 1)]);
        assert_eq!(d.total(), 3);

        let k3 = crate::fixtures::triangle();
        let d = size_distribution_from(&k3).unwrap();
        assert_eq!(d.counts(), &[(2, 3)]);

        // round trip: regeneration preserves the edge count
        let params = TheraParams {
            nodes: 4,
            sizes: d,
            community_size: 5,
            intra_ratio: 0.5,
            alpha: 2.0,
            beta: 2,
            seed: 2,
        };
        let out = generate_thera(&params).unwrap();
        assert_eq!(out.hypergraph.edge_count(), 3);
    }

    #[test]
    fn size_distribution_validation() {
        assert!(SizeDistribution::new([(1, 5)]).is_err());
        assert!(SizeDistribution::new([(3, 0)]).is_err());
        assert!(SizeDistribution::from_text("3 10\n# note\n4 5\n").is_ok());
        assert!(SizeDistribution::from_text("3\n").is_err());
    }

    #[test]
    fn sampled_sizes_follow_the_weights() {
        let d = sizes(&[(2, 1), (3, 3)]);
        let mut r = rng(15);
        let mut threes = 0u64;
        for _ in 0..40_000 {
            if d.sample(&mut r) == 3 {
                threes += 1;
            }
        }
        let frac = threes as f64 / 40_000.0;
        assert!((frac - 0.75).abs() < 0.02, "P(3) = {frac}");
    }
}
