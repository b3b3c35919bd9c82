//! Pair matching guided by cores, contraction, and the clustering
//! coefficient that drives the similarity threshold.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::roughset::CoreDecomposition;

/// Lower edge of the target compression band; non-core matching stops once
/// a level reaches it.
pub const MIN_COMPRESSION: f64 = 1.5;
/// Upper edge of the target compression band.
pub const MAX_COMPRESSION: f64 = 1.8;

pub const MIN_SIMILARITY_THRESHOLD: f64 = 0.05;
pub const MAX_SIMILARITY_THRESHOLD: f64 = 0.95;

/// Weighted Jaccard index of the incidence sets of `u` and `v`.
pub fn weighted_jaccard(h: &Hypergraph, u: usize, v: usize) -> f64 {
    let (a, b) = (h.incident_edges(u), h.incident_edges(v));
    let (mut i, mut j) = (0, 0);
    let (mut shared, mut union) = (0u64, 0u64);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            union += h.edge_weight(a[i] as usize);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            union += h.edge_weight(b[j] as usize);
            j += 1;
        } else {
            let w = h.edge_weight(a[i] as usize);
            shared += w;
            union += w;
            i += 1;
            j += 1;
        }
    }
    if union == 0 {
        0.0
    } else {
        shared as f64 / union as f64
    }
}

/// Pairing of vertices to be merged into coarse vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<VertexId>>,
    pairs: usize,
}

impl Matching {
    pub fn empty(num_vertices: usize) -> Self {
        Matching {
            mate: vec![None; num_vertices],
            pairs: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.mate.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mate.is_empty()
    }

    #[inline]
    pub fn mate(&self, v: usize) -> Option<VertexId> {
        self.mate[v]
    }

    #[inline]
    pub fn is_matched(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs
    }

    pub fn num_coarse(&self) -> usize {
        self.mate.len() - self.pairs
    }

    /// `|V| / |V_coarse|` for this matching.
    pub fn compression_ratio(&self) -> f64 {
        if self.num_coarse() == 0 {
            1.0
        } else {
            self.mate.len() as f64 / self.num_coarse() as f64
        }
    }

    /// Pairs `u` and `v`. Both must be unmatched and distinct.
    pub fn pair(&mut self, u: usize, v: usize) {
        assert!(u != v, "cannot match a vertex with itself");
        assert!(
            self.mate[u].is_none() && self.mate[v].is_none(),
            "vertex already matched"
        );
        self.mate[u] = Some(v as VertexId);
        self.mate[v] = Some(u as VertexId);
        self.pairs += 1;
    }

    /// Coarse vertex id of every fine vertex, numbered in order of the
    /// lowest fine id of each coarse vertex.
    pub fn coarse_ids(&self) -> Vec<u32> {
        let mut ids = vec![u32::MAX; self.mate.len()];
        let mut next = 0u32;
        for v in 0..self.mate.len() {
            if ids[v] != u32::MAX {
                continue;
            }
            ids[v] = next;
            if let Some(u) = self.mate[v] {
                ids[u as usize] = next;
            }
            next += 1;
        }
        ids
    }

    /// Whether `mate` is a proper involution without fixed points.
    pub fn is_involution(&self) -> bool {
        let mut pairs = 0;
        for (v, m) in self.mate.iter().enumerate() {
            if let Some(u) = *m {
                if u as usize == v || self.mate.get(u as usize) != Some(&Some(v as VertexId)) {
                    return false;
                }
                pairs += 1;
            }
        }
        pairs == 2 * self.pairs
    }
}

/// Reusable accumulator of shared incident weight between one vertex and
/// its neighbours.
struct NeighborScan {
    shared: Vec<u64>,
    touched: Vec<VertexId>,
    incident_weight: Vec<u64>,
}

impl NeighborScan {
    fn new(h: &Hypergraph) -> Self {
        let incident_weight = (0..h.num_vertices())
            .map(|v| {
                h.incident_edges(v)
                    .iter()
                    .map(|&e| h.edge_weight(e as usize))
                    .sum()
            })
            .collect();
        NeighborScan {
            shared: vec![0; h.num_vertices()],
            touched: Vec::new(),
            incident_weight,
        }
    }

    /// Neighbour of `u` accepted by `eligible` with the largest weighted
    /// Jaccard index; ties go to the lower vertex id.
    fn best<F>(&mut self, h: &Hypergraph, u: usize, eligible: F) -> Option<(VertexId, f64)>
    where
        F: Fn(VertexId) -> bool,
    {
        for &e in h.incident_edges(u) {
            let w = h.edge_weight(e as usize);
            for &x in h.pins(e as usize) {
                if x as usize == u || !eligible(x) {
                    continue;
                }
                if self.shared[x as usize] == 0 {
                    self.touched.push(x);
                }
                self.shared[x as usize] += w;
            }
        }
        let mut best: Option<(VertexId, f64)> = None;
        let wu = self.incident_weight[u];
        for &x in &self.touched {
            let shared = self.shared[x as usize];
            let union = wu + self.incident_weight[x as usize] - shared;
            let j = shared as f64 / union as f64;
            let better = match best {
                None => true,
                Some((bx, bj)) => j > bj || (j == bj && x < bx),
            };
            if better {
                best = Some((x, j));
            }
            self.shared[x as usize] = 0;
        }
        self.touched.clear();
        best
    }
}

/// Matches vertices inside each core.
///
/// Within a core, unmatched vertices are visited in random order and each is
/// paired with the unmatched vertex of the same core with the highest
/// weighted Jaccard index (lowest id on ties, so a core member sharing no
/// hyperedge is still a valid partner). Pairs heavier than
/// `max_pair_weight` are never formed. Returns the matching and every
/// vertex left unmatched, including singleton cores and the non-core list.
pub fn match_in_cores<R: Rng + ?Sized>(
    h: &Hypergraph,
    cores: &CoreDecomposition,
    max_pair_weight: u64,
    rng: &mut R,
) -> (Matching, Vec<VertexId>) {
    let n = h.num_vertices();
    let mut m = Matching::empty(n);
    let mut core_of = vec![u32::MAX; n];
    for (c, core) in cores.cores.iter().enumerate() {
        for &v in core {
            core_of[v as usize] = c as u32;
        }
    }
    let mut scan = NeighborScan::new(h);
    let mut leftovers = Vec::new();

    for (c, core) in cores.cores.iter().enumerate() {
        let c = c as u32;
        let mut by_id = core.clone();
        by_id.sort_unstable();
        let mut lowest = 0usize;
        let mut order = core.clone();
        order.shuffle(rng);
        for &u in &order {
            if m.is_matched(u as usize) {
                continue;
            }
            let fits = |x: VertexId| {
                h.vertex_weight(u as usize) + h.vertex_weight(x as usize) <= max_pair_weight
            };
            let best = scan
                .best(h, u as usize, |x| {
                    core_of[x as usize] == c && !m.is_matched(x as usize) && fits(x)
                })
                .map(|(x, _)| x)
                .or_else(|| {
                    while lowest < by_id.len() && m.is_matched(by_id[lowest] as usize) {
                        lowest += 1;
                    }
                    by_id[lowest..]
                        .iter()
                        .copied()
                        .find(|&x| x != u && !m.is_matched(x as usize) && fits(x))
                });
            if let Some(x) = best {
                m.pair(u as usize, x as usize);
            }
        }
        leftovers.extend(core.iter().copied().filter(|&v| !m.is_matched(v as usize)));
    }
    leftovers.extend_from_slice(&cores.singleton_cores);
    leftovers.extend_from_slice(&cores.non_core);
    (m, leftovers)
}

/// Adds pairs among the unmatched vertices in `pool` until the level's
/// compression ratio reaches `min_ratio` or the pool is exhausted.
///
/// Each visited vertex is paired with its unmatched neighbour (sharing at
/// least one hyperedge) of highest weighted Jaccard index, subject to the
/// pair weight limit.
pub fn match_noncore<R: Rng + ?Sized>(
    h: &Hypergraph,
    m: &mut Matching,
    pool: &[VertexId],
    min_ratio: f64,
    max_pair_weight: u64,
    rng: &mut R,
) {
    let mut order = pool.to_vec();
    order.shuffle(rng);
    let mut scan = NeighborScan::new(h);
    for &u in &order {
        if m.compression_ratio() >= min_ratio {
            break;
        }
        if m.is_matched(u as usize) {
            continue;
        }
        let wu = h.vertex_weight(u as usize);
        if let Some((x, _)) = scan.best(h, u as usize, |x| {
            !m.is_matched(x as usize) && wu + h.vertex_weight(x as usize) <= max_pair_weight
        }) {
            m.pair(u as usize, x as usize);
        }
    }
}

/// One coarsening step: the coarse hypergraph and the map from fine to
/// coarse vertices.
#[derive(Clone, Debug)]
pub struct LevelLink {
    pub coarse: Hypergraph,
    pub coarse_id: Vec<u32>,
    pub dropped_unit_edges: usize,
    /// Hyperedges absorbed into an identical earlier hyperedge.
    pub merged_edges: usize,
    /// Groups of identical hyperedges that were merged.
    pub merged_edge_groups: usize,
}

impl LevelLink {
    pub fn num_fine(&self) -> usize {
        self.coarse_id.len()
    }

    pub fn compression_ratio(&self) -> f64 {
        if self.coarse.num_vertices() == 0 {
            1.0
        } else {
            self.num_fine() as f64 / self.coarse.num_vertices() as f64
        }
    }
}

fn pin_hash(pins: &[u32]) -> u64 {
    let mut hasher = DefaultHasher::new();
    pins.hash(&mut hasher);
    hasher.finish()
}

/// Merges matched vertices, drops hyperedges that shrink to a single pin and
/// replaces each group of identical hyperedges by one hyperedge carrying the
/// summed weight.
pub fn contract(h: &Hypergraph, m: &Matching) -> LevelLink {
    let coarse_id = m.coarse_ids();
    let nc = m.num_coarse();
    let mut vertex_weights = vec![0u64; nc];
    for v in 0..h.num_vertices() {
        vertex_weights[coarse_id[v] as usize] += h.vertex_weight(v);
    }

    let mut edge_offsets = vec![0usize];
    let mut edge_pins: Vec<u32> = Vec::with_capacity(h.num_pins());
    let mut edge_weights: Vec<u64> = Vec::new();
    let mut buckets: HashMap<u64, Vec<u32>> = HashMap::new();
    let mut dropped = 0;
    let mut merged = 0;
    let mut group_heads: Vec<bool> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();

    for e in 0..h.num_hyperedges() {
        scratch.clear();
        scratch.extend(h.pins(e).iter().map(|&v| coarse_id[v as usize]));
        scratch.sort_unstable();
        scratch.dedup();
        if scratch.len() <= 1 {
            dropped += 1;
            continue;
        }
        let key = pin_hash(&scratch);
        let bucket = buckets.entry(key).or_default();
        let same = bucket.iter().copied().find(|&c| {
            let c = c as usize;
            edge_pins[edge_offsets[c]..edge_offsets[c + 1]] == scratch[..]
        });
        match same {
            Some(c) => {
                edge_weights[c as usize] += h.edge_weight(e);
                group_heads[c as usize] = true;
                merged += 1;
            }
            None => {
                bucket.push(edge_weights.len() as u32);
                edge_pins.extend_from_slice(&scratch);
                edge_offsets.push(edge_pins.len());
                edge_weights.push(h.edge_weight(e));
                group_heads.push(false);
            }
        }
    }

    LevelLink {
        coarse: Hypergraph::from_csr(vertex_weights, edge_weights, edge_offsets, edge_pins),
        coarse_id,
        dropped_unit_edges: dropped,
        merged_edges: merged,
        merged_edge_groups: group_heads.iter().filter(|&&g| g).count(),
    }
}

/// Clustering coefficient of hyperedge `e`.
///
/// Overlap with every other hyperedge, normalised by `|e| − 1` and weighted
/// by that hyperedge's weight, over the total weight of the other hyperedges
/// incident to the pins of `e`. Zero for hyperedges of size at most one and
/// for hyperedges sharing no vertex with any other.
pub fn cc_edge(h: &Hypergraph, e: usize) -> f64 {
    CcScratch::new(h.num_hyperedges()).cc_edge(h, e)
}

/// Dense overlap counters; summation follows discovery order so results
/// are bitwise reproducible.
struct CcScratch {
    overlap: Vec<u32>,
    touched: Vec<u32>,
}

impl CcScratch {
    fn new(m: usize) -> Self {
        CcScratch {
            overlap: vec![0; m],
            touched: Vec::new(),
        }
    }

    fn cc_edge(&mut self, h: &Hypergraph, e: usize) -> f64 {
        let size = h.edge_size(e);
        if size <= 1 {
            return 0.0;
        }
        let mut denominator = 0u64;
        for &v in h.pins(e) {
            for &f in h.incident_edges(v as usize) {
                if f as usize == e {
                    continue;
                }
                denominator += h.edge_weight(f as usize);
                if self.overlap[f as usize] == 0 {
                    self.touched.push(f);
                }
                self.overlap[f as usize] += 1;
            }
        }
        let scale = (size - 1) as f64;
        let mut numerator = 0.0;
        for &f in &self.touched {
            let shared = std::mem::take(&mut self.overlap[f as usize]);
            numerator += shared as f64 / scale * h.edge_weight(f as usize) as f64;
        }
        self.touched.clear();
        if denominator == 0 {
            return 0.0;
        }
        numerator / denominator as f64
    }
}

/// Mean clustering coefficient over all hyperedges.
pub fn cc_hypergraph(h: &Hypergraph) -> Result<f64> {
    let m = h.num_hyperedges();
    if m == 0 {
        return Err(Error::InvalidHypergraph(
            "clustering coefficient needs at least one hyperedge".into(),
        ));
    }
    let mut scratch = CcScratch::new(m);
    let sum: f64 = (0..m).map(|e| scratch.cc_edge(h, e)).sum();
    Ok(sum / m as f64)
}

pub fn clamp_similarity(s: f64) -> f64 {
    s.clamp(MIN_SIMILARITY_THRESHOLD, MAX_SIMILARITY_THRESHOLD)
}

/// Similarity threshold carried from one coarsening level to the next.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdState {
    pub s: f64,
    pub avg_degree: f64,
}

impl ThresholdState {
    /// Threshold seeded from the clustering coefficient of `h`.
    pub fn initial(h: &Hypergraph) -> Result<Self> {
        Ok(ThresholdState {
            s: clamp_similarity(cc_hypergraph(h)?),
            avg_degree: h.average_degree(),
        })
    }
}

/// Scales the threshold by the inverse change in average vertex degree.
pub fn update_threshold(ts: ThresholdState, new_avg_degree: f64) -> Result<ThresholdState> {
    if !(ts.avg_degree > 0.0 && new_avg_degree > 0.0) {
        return Err(Error::Config(format!(
            "average degrees must be positive (old {}, new {})",
            ts.avg_degree, new_avg_degree
        )));
    }
    let s = if ts.avg_degree == new_avg_degree {
        ts.s
    } else {
        clamp_similarity(ts.s * ts.avg_degree / new_avg_degree)
    };
    Ok(ThresholdState {
        s,
        avg_degree: new_avg_degree,
    })
}
