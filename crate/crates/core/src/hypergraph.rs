//! Weighted hypergraphs, partitions and the connectivity-minus-one metric.

use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

/// A hypergraph with weighted vertices and weighted hyperedges.
///
/// Incidence is stored twice in compressed form: the pins of every hyperedge
/// and the hyperedges incident to every vertex. Both lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_weights: Vec<u64>,
    edge_weights: Vec<u64>,
    edge_offsets: Vec<usize>,
    edge_pins: Vec<VertexId>,
    vertex_offsets: Vec<usize>,
    vertex_edges: Vec<EdgeId>,
}

/// An invariant violation reported by [`Hypergraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { edge: usize, vertex: usize },
    EdgeOutOfRange { vertex: usize, edge: usize },
    DuplicatePin { edge: usize, vertex: usize },
    DuplicateIncidence { vertex: usize, edge: usize },
    UnsortedPins { edge: usize },
    UnsortedIncidence { vertex: usize },
    ZeroVertexWeight { vertex: usize },
    ZeroEdgeWeight { edge: usize },
    TransposeMismatch { edge: usize, vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "id out of range: hyperedge {edge} lists vertex {vertex}")
            }
            Violation::EdgeOutOfRange { vertex, edge } => {
                write!(f, "id out of range: vertex {vertex} lists hyperedge {edge}")
            }
            Violation::DuplicatePin { edge, vertex } => {
                write!(
                    f,
                    "duplicate pin: vertex {vertex} twice in hyperedge {edge}"
                )
            }
            Violation::DuplicateIncidence { vertex, edge } => {
                write!(
                    f,
                    "duplicate incidence: hyperedge {edge} twice at vertex {vertex}"
                )
            }
            Violation::UnsortedPins { edge } => write!(f, "pins of hyperedge {edge} not sorted"),
            Violation::UnsortedIncidence { vertex } => {
                write!(f, "incidence list of vertex {vertex} not sorted")
            }
            Violation::ZeroVertexWeight { vertex } => write!(f, "zero weight on vertex {vertex}"),
            Violation::ZeroEdgeWeight { edge } => write!(f, "zero weight on hyperedge {edge}"),
            Violation::TransposeMismatch { edge, vertex } => {
                write!(f, "transpose mismatch for pin <e{edge}, v{vertex}>")
            }
        }
    }
}

fn flatten<T: Copy>(lists: &[Vec<T>]) -> (Vec<usize>, Vec<T>) {
    let mut offsets = Vec::with_capacity(lists.len() + 1);
    let mut flat = Vec::with_capacity(lists.iter().map(Vec::len).sum());
    offsets.push(0);
    for list in lists {
        flat.extend_from_slice(list);
        offsets.push(flat.len());
    }
    (offsets, flat)
}

impl Hypergraph {
    /// Builds a hypergraph from per-hyperedge pin lists.
    ///
    /// Pin lists are sorted and deduplicated; the vertex-side incidence is
    /// derived. Ids must be in range and every weight must be positive.
    pub fn new(
        vertex_weights: Vec<u64>,
        edge_weights: Vec<u64>,
        mut pins: Vec<Vec<VertexId>>,
    ) -> Result<Self> {
        if edge_weights.len() != pins.len() {
            return Err(Error::SizeMismatch {
                expected: pins.len(),
                found: edge_weights.len(),
            });
        }
        let n = vertex_weights.len();
        for (e, list) in pins.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&v) = list.last() {
                if v as usize >= n {
                    return Err(Error::InvalidHypergraph(
                        Violation::VertexOutOfRange {
                            edge: e,
                            vertex: v as usize,
                        }
                        .to_string(),
                    ));
                }
            }
        }
        if let Some(v) = vertex_weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidHypergraph(
                Violation::ZeroVertexWeight { vertex: v }.to_string(),
            ));
        }
        if let Some(e) = edge_weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidHypergraph(
                Violation::ZeroEdgeWeight { edge: e }.to_string(),
            ));
        }
        let (edge_offsets, edge_pins) = flatten(&pins);
        let (vertex_offsets, vertex_edges) = transpose(n, &edge_offsets, &edge_pins);
        Ok(Hypergraph {
            vertex_weights,
            edge_weights,
            edge_offsets,
            edge_pins,
            vertex_offsets,
            vertex_edges,
        })
    }

    /// Unit vertex and hyperedge weights.
    pub fn unweighted(num_vertices: usize, pins: Vec<Vec<VertexId>>) -> Result<Self> {
        let m = pins.len();
        Self::new(vec![1; num_vertices], vec![1; m], pins)
    }

    /// Assembles a hypergraph from both incidence directions without any
    /// checking. Use [`Hypergraph::validate`] to inspect the result.
    pub fn from_raw_parts(
        vertex_weights: Vec<u64>,
        edge_weights: Vec<u64>,
        pins_by_edge: Vec<Vec<VertexId>>,
        edges_by_vertex: Vec<Vec<EdgeId>>,
    ) -> Self {
        let (edge_offsets, edge_pins) = flatten(&pins_by_edge);
        let (vertex_offsets, vertex_edges) = flatten(&edges_by_vertex);
        Hypergraph {
            vertex_weights,
            edge_weights,
            edge_offsets,
            edge_pins,
            vertex_offsets,
            vertex_edges,
        }
    }

    pub(crate) fn from_csr(
        vertex_weights: Vec<u64>,
        edge_weights: Vec<u64>,
        edge_offsets: Vec<usize>,
        edge_pins: Vec<VertexId>,
    ) -> Self {
        let (vertex_offsets, vertex_edges) =
            transpose(vertex_weights.len(), &edge_offsets, &edge_pins);
        Hypergraph {
            vertex_weights,
            edge_weights,
            edge_offsets,
            edge_pins,
            vertex_offsets,
            vertex_edges,
        }
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.vertex_weights.len()
    }

    #[inline]
    pub fn num_hyperedges(&self) -> usize {
        self.edge_weights.len()
    }

    #[inline]
    pub fn num_pins(&self) -> usize {
        self.edge_pins.len()
    }

    #[inline]
    pub fn pins(&self, e: usize) -> &[VertexId] {
        &self.edge_pins[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    #[inline]
    pub fn incident_edges(&self, v: usize) -> &[EdgeId] {
        &self.vertex_edges[self.vertex_offsets[v]..self.vertex_offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.vertex_offsets[v + 1] - self.vertex_offsets[v]
    }

    #[inline]
    pub fn edge_size(&self, e: usize) -> usize {
        self.edge_offsets[e + 1] - self.edge_offsets[e]
    }

    #[inline]
    pub fn vertex_weight(&self, v: usize) -> u64 {
        self.vertex_weights[v]
    }

    #[inline]
    pub fn edge_weight(&self, e: usize) -> u64 {
        self.edge_weights[e]
    }

    pub fn vertex_weights(&self) -> &[u64] {
        &self.vertex_weights
    }

    pub fn edge_weights(&self) -> &[u64] {
        &self.edge_weights
    }

    pub fn total_vertex_weight(&self) -> u64 {
        self.vertex_weights.iter().sum()
    }

    pub fn max_edge_weight(&self) -> u64 {
        self.edge_weights.iter().copied().max().unwrap_or(0)
    }

    pub fn max_vertex_weight(&self) -> u64 {
        self.vertex_weights.iter().copied().max().unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.num_vertices() == 0 {
            0.0
        } else {
            self.num_pins() as f64 / self.num_vertices() as f64
        }
    }

    /// Replaces every hyperedge weight.
    pub fn with_edge_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.num_hyperedges() {
            return Err(Error::SizeMismatch {
                expected: self.num_hyperedges(),
                found: weights.len(),
            });
        }
        if let Some(e) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidHypergraph(
                Violation::ZeroEdgeWeight { edge: e }.to_string(),
            ));
        }
        self.edge_weights = weights;
        Ok(self)
    }

    /// Every invariant violation, or an empty list for a well-formed hypergraph.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.num_vertices();
        let m = self.num_hyperedges();
        let mut out = Vec::new();
        if self.edge_offsets.len() != m + 1 || self.vertex_offsets.len() != n + 1 {
            // Offsets sized for a different hypergraph; per-list checks below
            // would index out of bounds.
            out.push(Violation::TransposeMismatch { edge: m, vertex: n });
            return out;
        }
        for (v, &w) in self.vertex_weights.iter().enumerate() {
            if w == 0 {
                out.push(Violation::ZeroVertexWeight { vertex: v });
            }
        }
        for (e, &w) in self.edge_weights.iter().enumerate() {
            if w == 0 {
                out.push(Violation::ZeroEdgeWeight { edge: e });
            }
        }
        for e in 0..m {
            let pins = self.pins(e);
            for (i, &v) in pins.iter().enumerate() {
                if v as usize >= n {
                    out.push(Violation::VertexOutOfRange {
                        edge: e,
                        vertex: v as usize,
                    });
                }
                if pins[..i].contains(&v) {
                    out.push(Violation::DuplicatePin {
                        edge: e,
                        vertex: v as usize,
                    });
                }
            }
            if pins.windows(2).any(|w| w[0] > w[1]) {
                out.push(Violation::UnsortedPins { edge: e });
            }
        }
        for v in 0..n {
            let edges = self.incident_edges(v);
            for (i, &e) in edges.iter().enumerate() {
                if e as usize >= m {
                    out.push(Violation::EdgeOutOfRange {
                        vertex: v,
                        edge: e as usize,
                    });
                }
                if edges[..i].contains(&e) {
                    out.push(Violation::DuplicateIncidence {
                        vertex: v,
                        edge: e as usize,
                    });
                }
            }
            if edges.windows(2).any(|w| w[0] > w[1]) {
                out.push(Violation::UnsortedIncidence { vertex: v });
            }
        }
        for e in 0..m {
            for &v in self.pins(e) {
                if (v as usize) < n && !self.incident_edges(v as usize).contains(&(e as EdgeId)) {
                    out.push(Violation::TransposeMismatch {
                        edge: e,
                        vertex: v as usize,
                    });
                }
            }
        }
        for v in 0..n {
            for &e in self.incident_edges(v) {
                if (e as usize) < m && !self.pins(e as usize).contains(&(v as VertexId)) {
                    out.push(Violation::TransposeMismatch {
                        edge: e as usize,
                        vertex: v,
                    });
                }
            }
        }
        out
    }

    /// Sub-hypergraph induced by `vertices` (sorted, distinct). Hyperedges are
    /// restricted to the selected pins and kept only if at least two remain.
    /// Vertex `i` of the result is `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[VertexId]) -> Hypergraph {
        let mut local = vec![u32::MAX; self.num_vertices()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let vertex_weights = vertices
            .iter()
            .map(|&v| self.vertex_weights[v as usize])
            .collect();
        let mut edge_weights = Vec::new();
        let mut edge_offsets = vec![0];
        let mut edge_pins = Vec::new();
        for e in 0..self.num_hyperedges() {
            let start = edge_pins.len();
            edge_pins.extend(
                self.pins(e)
                    .iter()
                    .map(|&v| local[v as usize])
                    .filter(|&l| l != u32::MAX),
            );
            if edge_pins.len() - start >= 2 {
                edge_offsets.push(edge_pins.len());
                edge_weights.push(self.edge_weights[e]);
            } else {
                edge_pins.truncate(start);
            }
        }
        Hypergraph::from_csr(vertex_weights, edge_weights, edge_offsets, edge_pins)
    }
}

fn transpose(n: usize, offsets: &[usize], pins: &[VertexId]) -> (Vec<usize>, Vec<EdgeId>) {
    let mut counts = vec![0usize; n + 1];
    for &v in pins {
        counts[v as usize + 1] += 1;
    }
    for i in 0..n {
        counts[i + 1] += counts[i];
    }
    let mut fill = counts.clone();
    let mut edges = vec![0 as EdgeId; pins.len()];
    // Walking hyperedges in order leaves each vertex list sorted.
    for e in 0..offsets.len().saturating_sub(1) {
        for &v in &pins[offsets[e]..offsets[e + 1]] {
            edges[fill[v as usize]] = e as EdgeId;
            fill[v as usize] += 1;
        }
    }
    (counts, edges)
}

/// Assignment of every vertex to one of `k` parts, with cached part weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    k: usize,
    assignment: Vec<u32>,
    part_weights: Vec<u64>,
}

impl Partition {
    pub fn new(h: &Hypergraph, k: usize, assignment: Vec<u32>) -> Result<Self> {
        if assignment.len() != h.num_vertices() {
            return Err(Error::SizeMismatch {
                expected: h.num_vertices(),
                found: assignment.len(),
            });
        }
        let mut part_weights = vec![0u64; k];
        for (v, &p) in assignment.iter().enumerate() {
            if p as usize >= k {
                return Err(Error::OutOfRange {
                    what: "part",
                    id: p as usize,
                    limit: k,
                });
            }
            part_weights[p as usize] += h.vertex_weight(v);
        }
        Ok(Partition {
            k,
            assignment,
            part_weights,
        })
    }

    /// Caller guarantees that `part_weights` matches `assignment`.
    pub(crate) fn from_parts(k: usize, assignment: Vec<u32>, part_weights: Vec<u64>) -> Self {
        debug_assert_eq!(part_weights.len(), k);
        Partition {
            k,
            assignment,
            part_weights,
        }
    }

    /// Every vertex in part 0.
    pub fn single_part(h: &Hypergraph, k: usize) -> Self {
        let mut part_weights = vec![0; k.max(1)];
        part_weights[0] = h.total_vertex_weight();
        Partition {
            k: k.max(1),
            assignment: vec![0; h.num_vertices()],
            part_weights,
        }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn part(&self, v: usize) -> u32 {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn into_assignment(self) -> Vec<u32> {
        self.assignment
    }

    pub fn part_weights(&self) -> &[u64] {
        &self.part_weights
    }

    #[inline]
    pub fn part_weight(&self, p: usize) -> u64 {
        self.part_weights[p]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Moves `v` (of weight `weight`) to part `to`.
    #[inline]
    pub fn move_vertex(&mut self, v: usize, to: u32, weight: u64) {
        let from = self.assignment[v] as usize;
        self.part_weights[from] -= weight;
        self.part_weights[to as usize] += weight;
        self.assignment[v] = to;
    }

    /// Number of vertices per part.
    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &p in &self.assignment {
            sizes[p as usize] += 1;
        }
        sizes
    }

    pub fn all_parts_nonempty(&self) -> bool {
        self.part_sizes().iter().all(|&s| s > 0)
    }
}

/// Number of distinct parts touched by hyperedge `e`.
pub fn connectivity_degree(h: &Hypergraph, p: &Partition, e: usize) -> Result<usize> {
    if e >= h.num_hyperedges() {
        return Err(Error::OutOfRange {
            what: "hyperedge",
            id: e,
            limit: h.num_hyperedges(),
        });
    }
    let mut seen: Vec<u32> = h.pins(e).iter().map(|&v| p.part(v as usize)).collect();
    seen.sort_unstable();
    seen.dedup();
    Ok(seen.len())
}

/// Connectivity-minus-one cost: sum of `γ(e) · (λ_e − 1)` over all hyperedges.
pub fn partition_cost(h: &Hypergraph, p: &Partition) -> u64 {
    let mut mark = vec![usize::MAX; p.k()];
    let mut cost = 0u64;
    for e in 0..h.num_hyperedges() {
        let mut lambda = 0u64;
        for &v in h.pins(e) {
            let part = p.part(v as usize) as usize;
            if mark[part] != e {
                mark[part] = e;
                lambda += 1;
            }
        }
        cost += h.edge_weight(e) * lambda.saturating_sub(1);
    }
    cost
}

/// Largest relative deviation of a part weight from the average part weight.
pub fn max_imbalance(h: &Hypergraph, p: &Partition) -> f64 {
    let total = h.total_vertex_weight() as f64;
    if total == 0.0 {
        return 0.0;
    }
    let avg = total / p.k() as f64;
    p.part_weights()
        .iter()
        .map(|&w| (w as f64 - avg).abs() / avg)
        .fold(0.0, f64::max)
}

/// Tolerance absorbing floating-point noise in balance comparisons.
pub(crate) const BALANCE_SLACK: f64 = 1e-9;

/// Whether every part weight lies within `(1 ± ε)` of the average.
pub fn is_balanced(h: &Hypergraph, p: &Partition, epsilon: f64) -> bool {
    max_imbalance(h, p) <= epsilon + BALANCE_SLACK
}
