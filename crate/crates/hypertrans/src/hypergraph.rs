//! Hypergraph storage, hyperwedge enumeration, and candidate retrieval.
//!
//! A hypergraph is a node set plus a list of hyperedges, each an arbitrary-size
//! node set. Nodes are dense `0..used_node_count()` ids internally; the labels
//! seen in the input are kept in a sidecar table for reporting. Hyperedges are
//! stored as sorted id arrays so that every set operation is a linear merge.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::Serialize;
use thiserror::Error;

/// Dense internal node id.
pub type NodeId = u32;
/// Index into [`Hypergraph::edges`].
pub type EdgeId = u32;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("input contains no hyperedges")]
    Empty,
    #[error("simplex stream ends early: sizes require {expected} vertices, stream has {actual}")]
    TruncatedStream { expected: usize, actual: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Why a pair of hyperedges fails to form a hyperwedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeDefect {
    Disjoint,
    Subset,
    Identical,
}

#[derive(Debug, Error)]
#[error("edge pair ({a}, {b}) is not a hyperwedge: {defect:?}")]
pub struct InvalidWedge {
    pub a: EdgeId,
    pub b: EdgeId,
    pub defect: WedgeDefect,
}

/// An unordered pair of intersecting hyperedges, neither containing the other.
/// Canonical form keeps `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hyperwedge {
    pub a: EdgeId,
    pub b: EdgeId,
}

impl Hyperwedge {
    pub fn new(a: EdgeId, b: EdgeId) -> Self {
        assert_ne!(a, b, "a hyperwedge is a pair of distinct hyperedges");
        Hyperwedge {
            a: a.min(b),
            b: a.max(b),
        }
    }
}

/// The three disjoint node sets of a hyperwedge: the two wings (set
/// differences) and the body (intersection). All three are sorted and
/// non-empty for a valid wedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeParts {
    pub left: Vec<NodeId>,
    pub right: Vec<NodeId>,
    pub body: Vec<NodeId>,
}

impl WedgeParts {
    /// Number of wing-to-wing pair interactions, `|left| * |right|`.
    pub fn pair_count(&self) -> u64 {
        self.left.len() as u64 * self.right.len() as u64
    }

    /// Swap the two wings. The wedge is an unordered pair, so any measure
    /// must be invariant under this.
    pub fn swapped(&self) -> WedgeParts {
        WedgeParts {
            left: self.right.clone(),
            right: self.left.clone(),
            body: self.body.clone(),
        }
    }
}

/// A set of hyperedge indices allowed to contribute to a wedge's transitivity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    indices: Vec<EdgeId>,
}

impl CandidateSet {
    /// Builds a candidate set; indices are sorted and deduplicated.
    pub fn new(mut indices: Vec<EdgeId>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        CandidateSet { indices }
    }

    pub fn indices(&self) -> &[EdgeId] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.indices.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.indices.iter().copied()
    }

    /// The set minus the given indices.
    pub fn without(&self, exclude: &[EdgeId]) -> CandidateSet {
        CandidateSet::new(
            self.indices
                .iter()
                .copied()
                .filter(|e| !exclude.contains(e))
                .collect(),
        )
    }
}

impl From<Vec<EdgeId>> for CandidateSet {
    fn from(v: Vec<EdgeId>) -> Self {
        CandidateSet::new(v)
    }
}

/// Immutable hypergraph with an inverted node -> hyperedge index.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    /// Hyperedges as sorted arrays of internal node ids.
    edges: Vec<Vec<NodeId>>,
    /// incidence[v] lists, in ascending order, the edges containing v.
    incidence: Vec<Vec<EdgeId>>,
    /// Internal id -> original label.
    labels: Vec<u64>,
    /// 1 + the largest label seen in the input (isolated low labels permitted).
    declared_node_count: u64,
}

impl Hypergraph {
    /// Builds a hypergraph whose node ids are already dense `0..node_count`.
    /// Labels are the identity. Edges are sorted and deduplicated node-wise,
    /// but duplicate hyperedges are kept; generators rely on that.
    pub fn from_parts(node_count: u32, mut edges: Vec<Vec<NodeId>>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
            debug_assert!(e.iter().all(|&v| v < node_count));
        }
        let labels = (0..node_count as u64).collect();
        let incidence = build_incidence(node_count as usize, &edges);
        Hypergraph {
            edges,
            incidence,
            labels,
            declared_node_count: node_count as u64,
        }
    }

    /// Parses the one-hyperedge-per-line text format: node labels separated
    /// by whitespace or commas, lines beginning with '#' ignored.
    pub fn from_edge_list(reader: impl BufRead, dedupe: bool) -> Result<Hypergraph, LoadError> {
        let mut raw: Vec<Vec<u64>> = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut edge = Vec::new();
            for tok in trimmed.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let id: u64 = tok.parse().map_err(|_| LoadError::Parse {
                    line: lineno + 1,
                    msg: format!("invalid node id {tok:?}"),
                })?;
                edge.push(id);
            }
            raw.push(edge);
        }
        Self::from_label_edges(raw, dedupe)
    }

    /// Parses the two-file corpus format: one hyperedge size per line in the
    /// `nverts` stream, and a flat vertex stream in `simplices`, consumed in
    /// lockstep.
    pub fn from_nverts_simplices(
        nverts: impl BufRead,
        simplices: impl BufRead,
        dedupe: bool,
    ) -> Result<Hypergraph, LoadError> {
        let sizes = parse_int_stream(nverts)?;
        let verts = parse_int_stream(simplices)?;
        let expected: usize = sizes.iter().map(|&s| s as usize).sum();
        if verts.len() < expected {
            return Err(LoadError::TruncatedStream {
                expected,
                actual: verts.len(),
            });
        }
        let mut raw = Vec::with_capacity(sizes.len());
        let mut at = 0usize;
        for &s in &sizes {
            let s = s as usize;
            raw.push(verts[at..at + s].to_vec());
            at += s;
        }
        Self::from_label_edges(raw, dedupe)
    }

    /// Compacts labels to dense ids and applies the preprocessing pass:
    /// with `dedupe` enabled, duplicate hyperedges (set equality) and
    /// hyperedges of size < 2 are dropped. Only nodes of surviving edges
    /// count as used; the declared universe still spans every label seen.
    pub fn from_label_edges(raw: Vec<Vec<u64>>, dedupe: bool) -> Result<Hypergraph, LoadError> {
        if raw.is_empty() {
            return Err(LoadError::Empty);
        }
        let declared = raw
            .iter()
            .flat_map(|e| e.iter())
            .max()
            .map_or(0, |&l| l + 1);

        let mut kept: Vec<Vec<u64>> = Vec::with_capacity(raw.len());
        let mut seen: std::collections::HashSet<Vec<u64>> = std::collections::HashSet::new();
        for e in raw {
            let mut labels: Vec<u64> = e;
            labels.sort_unstable();
            labels.dedup();
            if dedupe {
                if labels.len() < 2 {
                    continue;
                }
                if !seen.insert(labels.clone()) {
                    continue;
                }
            }
            kept.push(labels);
        }
        if kept.is_empty() {
            return Err(LoadError::Empty);
        }

        let mut label_map: BTreeMap<u64, NodeId> = BTreeMap::new();
        for e in &kept {
            for &l in e {
                label_map.entry(l).or_insert(0);
            }
        }
        let mut labels = Vec::with_capacity(label_map.len());
        for (next, (&label, slot)) in label_map.iter_mut().enumerate() {
            *slot = next as NodeId;
            labels.push(label);
        }

        let edges: Vec<Vec<NodeId>> = kept
            .into_iter()
            .map(|e| e.into_iter().map(|l| label_map[&l]).collect())
            .collect();
        let incidence = build_incidence(labels.len(), &edges);
        Ok(Hypergraph {
            edges,
            incidence,
            labels,
            declared_node_count: declared,
        })
    }

    /// Number of nodes that occur in at least one hyperedge (or were declared
    /// via [`Hypergraph::from_parts`]).
    pub fn used_node_count(&self) -> usize {
        self.labels.len()
    }

    /// 1 + the largest node label seen in the input.
    pub fn declared_node_count(&self) -> u64 {
        self.declared_node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &[NodeId] {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Vec<NodeId>] {
        &self.edges
    }

    pub fn incidence(&self, v: NodeId) -> &[EdgeId] {
        &self.incidence[v as usize]
    }

    pub fn label(&self, v: NodeId) -> u64 {
        self.labels[v as usize]
    }

    /// Node degree: the number of hyperedges containing `v`.
    pub fn degree(&self, v: NodeId) -> usize {
        self.incidence[v as usize].len()
    }

    pub fn is_pairwise(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// All candidate indices `0..edge_count()`.
    pub fn all_edges(&self) -> CandidateSet {
        CandidateSet {
            indices: (0..self.edges.len() as EdgeId).collect(),
        }
    }

    /// Writes the edge-list format using original labels, one hyperedge per
    /// line.
    pub fn write_edge_list(&self, mut out: impl Write) -> std::io::Result<()> {
        let mut buf = String::new();
        for e in &self.edges {
            buf.clear();
            for (i, &v) in e.iter().enumerate() {
                if i > 0 {
                    buf.push(' ');
                }
                buf.push_str(&self.label(v).to_string());
            }
            buf.push('\n');
            out.write_all(buf.as_bytes())?;
        }
        Ok(())
    }

    /// Merged intersection size of two sorted slices.
    pub fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// Classifies the unordered pair (a, b): `Ok` with the intersection size
    /// when it is a hyperwedge, the defect otherwise.
    pub fn classify_pair(&self, a: EdgeId, b: EdgeId) -> Result<usize, WedgeDefect> {
        let (ea, eb) = (self.edge(a), self.edge(b));
        let isect = Self::intersection_size(ea, eb);
        if isect == 0 {
            Err(WedgeDefect::Disjoint)
        } else if isect == ea.len() && isect == eb.len() {
            Err(WedgeDefect::Identical)
        } else if isect == ea.len() || isect == eb.len() {
            Err(WedgeDefect::Subset)
        } else {
            Ok(isect)
        }
    }

    /// The wings and body of a hyperwedge.
    pub fn wedge_parts(&self, w: Hyperwedge) -> Result<WedgeParts, InvalidWedge> {
        self.classify_pair(w.a, w.b)
            .map_err(|defect| InvalidWedge {
                a: w.a,
                b: w.b,
                defect,
            })?;
        let (ea, eb) = (self.edge(w.a), self.edge(w.b));
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut body = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < ea.len() && j < eb.len() {
            match ea[i].cmp(&eb[j]) {
                std::cmp::Ordering::Less => {
                    left.push(ea[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    right.push(eb[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    body.push(ea[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        left.extend_from_slice(&ea[i..]);
        right.extend_from_slice(&eb[j..]);
        Ok(WedgeParts { left, right, body })
    }

    /// Streaming enumeration of all hyperwedges, each emitted exactly once in
    /// ascending `(a, b)` order. Pairs are found through the inverted index;
    /// only pairs sharing at least one node are ever examined.
    pub fn hyperwedges(&self) -> Hyperwedges<'_> {
        Hyperwedges {
            h: self,
            anchor: 0,
            partner_stamp: vec![0; self.edges.len()],
            generation: 0,
            pending: Vec::new(),
            at: 0,
        }
    }

    /// Total number of hyperwedges.
    pub fn hyperwedge_count(&self) -> u64 {
        self.hyperwedges().count() as u64
    }

    /// The overlapping-hyperedge set of a wedge, minus `exclude`: every
    /// hyperedge intersecting both wings. Computed by intersecting the
    /// incidence lists of the wing nodes, never by scanning all edges.
    pub fn overlapping_candidates(&self, parts: &WedgeParts, exclude: &[EdgeId]) -> CandidateSet {
        let mut scratch = CandidateCollector::new(self.edge_count());
        let mut out = Vec::new();
        scratch.overlapping(self, parts, &mut out);
        let set = CandidateSet { indices: out };
        if exclude.is_empty() {
            set
        } else {
            set.without(exclude)
        }
    }
}

fn build_incidence(node_count: usize, edges: &[Vec<NodeId>]) -> Vec<Vec<EdgeId>> {
    let mut incidence = vec![Vec::new(); node_count];
    for (idx, e) in edges.iter().enumerate() {
        for &v in e {
            incidence[v as usize].push(idx as EdgeId);
        }
    }
    incidence
}

fn parse_int_stream(reader: impl BufRead) -> Result<Vec<u64>, LoadError> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        for tok in line.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| LoadError::Parse {
                line: lineno + 1,
                msg: format!("invalid integer {tok:?}"),
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

/// Iterator over hyperwedges. Partner discovery uses a stamp array reset by
/// generation counter between anchor edges, so no global pair set is kept.
pub struct Hyperwedges<'a> {
    h: &'a Hypergraph,
    anchor: usize,
    partner_stamp: Vec<u64>,
    generation: u64,
    pending: Vec<EdgeId>,
    at: usize,
}

impl Iterator for Hyperwedges<'_> {
    type Item = Hyperwedge;

    fn next(&mut self) -> Option<Hyperwedge> {
        loop {
            if self.at < self.pending.len() {
                let b = self.pending[self.at];
                self.at += 1;
                return Some(Hyperwedge {
                    a: (self.anchor - 1) as EdgeId,
                    b,
                });
            }
            if self.anchor >= self.h.edges.len() {
                return None;
            }
            let a = self.anchor;
            self.anchor += 1;
            self.generation += 1;
            self.pending.clear();
            self.at = 0;
            for &v in &self.h.edges[a] {
                for &b in self.h.incidence(v) {
                    if (b as usize) > a && self.partner_stamp[b as usize] != self.generation {
                        self.partner_stamp[b as usize] = self.generation;
                        if self.h.classify_pair(a as EdgeId, b).is_ok() {
                            self.pending.push(b);
                        }
                    }
                }
            }
            self.pending.sort_unstable();
        }
    }
}

/// Reusable scratch for candidate retrieval in tight loops. Edge stamps are
/// generation counters, so reuse costs nothing between wedges.
pub struct CandidateCollector {
    left_stamp: Vec<u64>,
    right_stamp: Vec<u64>,
    generation: u64,
}

impl CandidateCollector {
    pub fn new(edge_count: usize) -> Self {
        CandidateCollector {
            left_stamp: vec![0; edge_count],
            right_stamp: vec![0; edge_count],
            generation: 0,
        }
    }

    /// Collects (sorted) every edge intersecting both wings.
    pub fn overlapping(&mut self, h: &Hypergraph, parts: &WedgeParts, out: &mut Vec<EdgeId>) {
        self.generation += 1;
        let generation = self.generation;
        out.clear();
        for &v in &parts.left {
            for &e in h.incidence(v) {
                self.left_stamp[e as usize] = generation;
            }
        }
        for &v in &parts.right {
            for &e in h.incidence(v) {
                if self.left_stamp[e as usize] == generation
                    && self.right_stamp[e as usize] != generation
                {
                    self.right_stamp[e as usize] = generation;
                    out.push(e);
                }
            }
        }
        out.sort_unstable();
    }

    /// Collects (sorted) every edge intersecting the union of the wings.
    pub fn touching_wings(&mut self, h: &Hypergraph, parts: &WedgeParts, out: &mut Vec<EdgeId>) {
        self.generation += 1;
        let generation = self.generation;
        out.clear();
        for &v in parts.left.iter().chain(parts.right.iter()) {
            for &e in h.incidence(v) {
                if self.left_stamp[e as usize] != generation {
                    self.left_stamp[e as usize] = generation;
                    out.push(e);
                }
            }
        }
        out.sort_unstable();
    }
}
