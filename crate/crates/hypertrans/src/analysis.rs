//! Statistical machinery and the observation report comparing a hypergraph
//! against degree-preserving null counterparts.
//!
//! The report covers four patterns:
//!
//! 1. whole-graph transitivity versus the null mean, with a Z-test;
//! 2. rank correlation between body-group sizes and wedge scores;
//! 3. node transitivity against node degree, log-binned;
//! 4. the spread (max - min) of per-hyperedge transitivity.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::generators::{hypercl_counterpart, GeneratorError};
use crate::hypergraph::Hypergraph;
use crate::interaction::ScoreFunction;
use crate::measures::{self, MeasureKind, MeasureRun, SampleSpec};
use crate::util::derive_seed;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("series is constant; rank correlation undefined")]
    ConstantInput,
    #[error("null sample has zero variance; Z undefined")]
    DegenerateNull,
    #[error("empty sample")]
    Empty,
}

/// Average ranks (ties get the mean of the positions they straddle).
fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).expect("no NaNs in rank input"));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        // positions i..=j share the value; mean 1-based rank
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, StatsError> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(StatsError::ConstantInput);
    }
    Ok(cov / (vx * vy).sqrt())
}

/// Spearman rank correlation: Pearson correlation of average-ranked series.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(StatsError::TooShort {
            needed: 2,
            got: xs.len(),
        });
    }
    pearson(&average_ranks(xs), &average_ranks(ys))
}

/// Two-sample Kolmogorov-Smirnov D statistic: the supremum gap between the
/// empirical CDFs, computed by a merge scan of the sorted samples.
pub fn ks_dstat(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::Empty);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|p, q| p.partial_cmp(q).expect("no NaNs in KS input"));
    ys.sort_by(|p, q| p.partial_cmp(q).expect("no NaNs in KS input"));
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let t = xs[i].min(ys[j]);
        while i < n && xs[i] <= t {
            i += 1;
        }
        while j < m && ys[j] <= t {
            j += 1;
        }
        let gap = (i as f64 / n as f64 - j as f64 / m as f64).abs();
        d = d.max(gap);
    }
    Ok(d)
}

/// Standardized gap between an observed statistic and the mean of null
/// replicates: `Z = (real - mean) / (sd / sqrt(n))` with the sample
/// (n-1 divisor) standard deviation, plus the two-sided normal p-value.
pub fn z_test(real_value: f64, null_values: &[f64]) -> Result<(f64, f64), StatsError> {
    let n = null_values.len();
    if n < 2 {
        return Err(StatsError::TooShort { needed: 2, got: n });
    }
    if null_values.windows(2).all(|w| w[0] == w[1]) {
        return Err(StatsError::DegenerateNull);
    }
    let mean = null_values.iter().sum::<f64>() / n as f64;
    let var = null_values
        .iter()
        .map(|&x| (x - mean) * (x - mean))
        .sum::<f64>()
        / (n as f64 - 1.0);
    let sd = var.sqrt();
    if sd == 0.0 {
        return Err(StatsError::DegenerateNull);
    }
    let z = (real_value - mean) / (sd / (n as f64).sqrt());
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let p = 2.0 * (1.0 - normal.cdf(z.abs()));
    Ok((z, p))
}

/// One log-2 degree bin: nodes with degree in `[2^k, 2^(k+1))`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DegreeBin {
    pub degree_lo: u64,
    pub degree_hi: u64,
    pub mean_transitivity: f64,
    pub node_count: u64,
}

/// Node transitivity profiled against degree under base-2 logarithmic
/// binning. Only nodes that sit in the body of at least one wedge appear.
#[derive(Debug, Clone, Serialize, Default)]
pub struct BinnedSeries {
    pub bins: Vec<DegreeBin>,
}

impl BinnedSeries {
    pub fn total_nodes(&self) -> u64 {
        self.bins.iter().map(|b| b.node_count).sum()
    }
}

fn profile_from_run(h: &Hypergraph, run: &MeasureRun) -> BinnedSeries {
    let mut acc: std::collections::BTreeMap<u32, (f64, u64)> = std::collections::BTreeMap::new();
    for (&v, &t) in &run.summary.node_transitivity {
        let d = h.degree(v) as u64;
        // a node in some wedge body lies in both wedge edges
        debug_assert!(d >= 2, "body nodes have degree >= 2");
        let bin = 63 - d.leading_zeros();
        let entry = acc.entry(bin).or_insert((0.0, 0));
        entry.0 += t;
        entry.1 += 1;
    }
    BinnedSeries {
        bins: acc
            .into_iter()
            .map(|(k, (sum, count))| DegreeBin {
                degree_lo: 1u64 << k,
                degree_hi: 1u64 << (k + 1),
                mean_transitivity: sum / count as f64,
                node_count: count,
            })
            .collect(),
    }
}

/// Degree/transitivity profile of a hypergraph under the max-coverage
/// measure.
pub fn degree_transitivity_profile(h: &Hypergraph, f: &ScoreFunction) -> BinnedSeries {
    let run = measures::run_measure(h, f, MeasureKind::HyperTrans, None);
    profile_from_run(h, &run)
}

/// Histogram of wedge scores over `SCORE_BINS` equal bins of [0, 1]; a score
/// of exactly 1 lands in the last bin.
pub const SCORE_BINS: usize = 50;

fn score_histogram(values: &[f64]) -> Vec<u64> {
    let mut bins = vec![0u64; SCORE_BINS];
    for &v in values {
        let at = ((v * SCORE_BINS as f64) as usize).min(SCORE_BINS - 1);
        bins[at] += 1;
    }
    bins
}

/// Statistics of one hypergraph (the real input or a null replicate).
#[derive(Debug, Clone, Serialize)]
pub struct GraphObservations {
    pub graph_transitivity: f64,
    pub wedge_count: u64,
    /// Spearman rho of (body size, wedge score); `None` when either series
    /// is constant or too short.
    pub body_size_correlation: Option<f64>,
    pub degree_profile: BinnedSeries,
    pub hyperedge_range: Option<f64>,
    /// Wedge scores over [`SCORE_BINS`] equal bins of [0, 1].
    pub score_histogram: Vec<u64>,
}

fn observe(
    h: &Hypergraph,
    f: &ScoreFunction,
    sample: Option<SampleSpec>,
) -> (GraphObservations, Vec<f64>) {
    let run = measures::run_measure(h, f, MeasureKind::HyperTrans, sample);
    let bodies: Vec<f64> = run.scores.iter().map(|s| s.body_size as f64).collect();
    let values: Vec<f64> = run.scores.iter().map(|s| s.value).collect();
    let rho = spearman(&bodies, &values).ok();
    let obs = GraphObservations {
        graph_transitivity: run.summary.graph_transitivity,
        wedge_count: run.summary.wedge_count,
        body_size_correlation: rho,
        degree_profile: profile_from_run(h, &run),
        hyperedge_range: run.summary.hyperedge_transitivity_range,
        score_histogram: score_histogram(&values),
    };
    (obs, values)
}

/// The full four-observation comparison of a hypergraph against
/// degree-preserving null replicates.
#[derive(Debug, Clone, Serialize)]
pub struct ObservationReport {
    pub seed: u64,
    pub null_runs: usize,
    pub real: GraphObservations,
    pub nulls: Vec<GraphObservations>,
    /// Null mean/sd of graph transitivity plus the Z-test against the real
    /// value; `None` when the null sample is degenerate.
    pub null_transitivity_mean: f64,
    pub null_transitivity_sd: f64,
    pub z_statistic: Option<f64>,
    pub p_value: Option<f64>,
    /// Per-replicate D statistic between the real and null wedge-score
    /// distributions, and its mean.
    pub ks_distances: Vec<Option<f64>>,
    pub ks_mean: Option<f64>,
    pub sampled: bool,
}

/// Builds `null_runs` null counterparts with the input's degree and size
/// sequences, measures everything on both sides, and assembles the report.
/// Replicates are generated and measured in parallel; per-replicate seeds
/// derive from `seed`, so the result is reproducible bit for bit.
pub fn observation_report(
    h: &Hypergraph,
    f: &ScoreFunction,
    null_runs: usize,
    seed: u64,
    sample: Option<SampleSpec>,
) -> Result<ObservationReport, GeneratorError> {
    assert!(null_runs >= 1, "need at least one null replicate");
    let (real, real_values) = observe(h, f, sample);

    let nulls: Vec<(GraphObservations, Vec<f64>)> = (0..null_runs)
        .into_par_iter()
        .map(|i| -> Result<_, GeneratorError> {
            let null = hypercl_counterpart(h, derive_seed(seed, i as u64))?;
            // the same preprocessing as for loaded data: duplicates and
            // singletons introduced by the null model are dropped
            let cleaned = reload_dedup(&null);
            Ok(observe(&cleaned, f, sample))
        })
        .collect::<Result<_, _>>()?;

    let null_ts: Vec<f64> = nulls.iter().map(|(o, _)| o.graph_transitivity).collect();
    let mean = null_ts.iter().sum::<f64>() / null_ts.len() as f64;
    let sd = if null_ts.len() > 1 {
        (null_ts
            .iter()
            .map(|&x| (x - mean) * (x - mean))
            .sum::<f64>()
            / (null_ts.len() as f64 - 1.0))
            .sqrt()
    } else {
        0.0
    };
    let zp = z_test(real.graph_transitivity, &null_ts).ok();
    let ks_distances: Vec<Option<f64>> = nulls
        .iter()
        .map(|(_, values)| ks_dstat(&real_values, values).ok())
        .collect();
    let known: Vec<f64> = ks_distances.iter().flatten().copied().collect();
    let ks_mean = if known.is_empty() {
        None
    } else {
        Some(known.iter().sum::<f64>() / known.len() as f64)
    };

    Ok(ObservationReport {
        seed,
        null_runs,
        real,
        nulls: nulls.into_iter().map(|(o, _)| o).collect(),
        null_transitivity_mean: mean,
        null_transitivity_sd: sd,
        z_statistic: zp.map(|(z, _)| z),
        p_value: zp.map(|(_, p)| p),
        ks_distances,
        ks_mean,
        sampled: sample.is_some(),
    })
}

/// Re-applies the loader's preprocessing to a generated hypergraph.
pub fn reload_dedup(h: &Hypergraph) -> Hypergraph {
    let raw: Vec<Vec<u64>> = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| h.label(v)).collect())
        .collect();
    Hypergraph::from_label_edges(raw, true).expect("generated hypergraphs are non-empty")
}
