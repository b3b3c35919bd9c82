//! Rough-set view of a hypergraph.
//!
//! Vertices are objects and hyperedges are attributes. Similar hyperedges
//! are merged into edge partitions (connected components of the hyperedge
//! connectivity graph), vertices are described by how strongly they attach
//! to each edge partition, and vertices with indiscernible binary
//! descriptions form cores.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::hypergraph::{EdgeId, Hypergraph, VertexId};

/// Share of `v`'s incident hyperedge weight carried by `e`.
pub fn info_value(h: &Hypergraph, v: usize, e: usize) -> f64 {
    let edges = h.incident_edges(v);
    if edges.binary_search(&(e as EdgeId)).is_err() {
        return 0.0;
    }
    let total: u64 = edges.iter().map(|&f| h.edge_weight(f as usize)).sum();
    h.edge_weight(e) as f64 / total as f64
}

fn intersection_len(a: &[u32], b: &[u32]) -> usize {
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

#[inline]
fn scaled_jaccard(inter: usize, size_i: usize, size_j: usize, wi: u64, wj: u64, wmax: u64) -> f64 {
    let union = size_i + size_j - inter;
    if union == 0 || wmax == 0 {
        return 0.0;
    }
    (inter as f64 * (wi + wj) as f64) / (union as f64 * 2.0 * wmax as f64)
}

/// Jaccard index of the pin sets of `ei` and `ej`, scaled by
/// `(γ(ei) + γ(ej)) / (2 · max γ)`.
pub fn hyperedge_similarity(h: &Hypergraph, ei: usize, ej: usize) -> f64 {
    let (a, b) = (h.pins(ei), h.pins(ej));
    scaled_jaccard(
        intersection_len(a, b),
        a.len(),
        b.len(),
        h.edge_weight(ei),
        h.edge_weight(ej),
        h.max_edge_weight(),
    )
}

/// Assignment of hyperedges to edge partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartitioning {
    cluster_of: Vec<u32>,
    clusters: Vec<Vec<EdgeId>>,
    cluster_weight: Vec<u64>,
}

impl EdgePartitioning {
    /// Builds an edge partitioning from explicit clusters. Each cluster is
    /// sorted; clusters must be disjoint and cover all hyperedges.
    pub fn from_clusters(h: &Hypergraph, mut clusters: Vec<Vec<EdgeId>>) -> Option<Self> {
        let mut cluster_of = vec![u32::MAX; h.num_hyperedges()];
        for (c, members) in clusters.iter_mut().enumerate() {
            members.sort_unstable();
            for &e in members.iter() {
                let slot = cluster_of.get_mut(e as usize)?;
                if *slot != u32::MAX {
                    return None;
                }
                *slot = c as u32;
            }
        }
        if cluster_of.contains(&u32::MAX) {
            return None;
        }
        let cluster_weight = clusters
            .iter()
            .map(|m| m.iter().map(|&e| h.edge_weight(e as usize)).sum())
            .collect();
        Some(EdgePartitioning {
            cluster_of,
            clusters,
            cluster_weight,
        })
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    #[inline]
    pub fn cluster_of(&self, e: usize) -> usize {
        self.cluster_of[e] as usize
    }

    pub fn clusters(&self) -> &[Vec<EdgeId>] {
        &self.clusters
    }

    pub fn cluster_weight(&self, c: usize) -> u64 {
        self.cluster_weight[c]
    }

    pub fn cluster_size(&self, c: usize) -> usize {
        self.clusters[c].len()
    }

    /// Lowest hyperedge id in the cluster; informational only.
    pub fn representative(&self, c: usize) -> EdgeId {
        self.clusters[c][0]
    }
}

/// Groups hyperedges into the connected components of the graph joining
/// every pair whose scaled similarity is at least `s`.
pub fn build_edge_partitions(h: &Hypergraph, s: f64) -> EdgePartitioning {
    let m = h.num_hyperedges();
    let wmax = h.max_edge_weight();
    let mut cluster_of = vec![u32::MAX; m];
    let mut clusters: Vec<Vec<EdgeId>> = Vec::new();
    let mut cluster_weight = Vec::new();

    // Sparse accumulator of |e ∩ e'| over hyperedges adjacent to e.
    let mut overlap = vec![0u32; m];
    let mut touched: Vec<EdgeId> = Vec::new();
    let mut queue = VecDeque::new();

    for seed in 0..m {
        if cluster_of[seed] != u32::MAX {
            continue;
        }
        let id = clusters.len() as u32;
        cluster_of[seed] = id;
        let mut members = vec![seed as EdgeId];
        let mut weight = 0u64;
        queue.push_back(seed);
        while let Some(e) = queue.pop_front() {
            weight += h.edge_weight(e);
            for &v in h.pins(e) {
                for &f in h.incident_edges(v as usize) {
                    if f as usize == e || cluster_of[f as usize] != u32::MAX {
                        continue;
                    }
                    if overlap[f as usize] == 0 {
                        touched.push(f);
                    }
                    overlap[f as usize] += 1;
                }
            }
            for &f in &touched {
                let f = f as usize;
                let sim = scaled_jaccard(
                    overlap[f] as usize,
                    h.edge_size(e),
                    h.edge_size(f),
                    h.edge_weight(e),
                    h.edge_weight(f),
                    wmax,
                );
                overlap[f] = 0;
                if sim >= s {
                    cluster_of[f] = id;
                    members.push(f as EdgeId);
                    queue.push_back(f);
                }
            }
            touched.clear();
        }
        members.sort_unstable();
        clusters.push(members);
        cluster_weight.push(weight);
    }

    EdgePartitioning {
        cluster_of,
        clusters,
        cluster_weight,
    }
}

/// Number of hyperedges incident to `v` that belong to cluster `c`.
pub fn reduced_value(h: &Hypergraph, ep: &EdgePartitioning, v: usize, c: usize) -> usize {
    h.incident_edges(v)
        .iter()
        .filter(|&&e| ep.cluster_of(e as usize) == c)
        .count()
}

/// How the binary signature of a vertex is derived from its reduced values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoreRule {
    /// Minimum fraction of a vertex's hyperedges that must fall in a cluster
    /// for the cluster bit to be set.
    pub threshold: f64,
    /// Ignore clusters holding a single hyperedge.
    pub drop_unit_clusters: bool,
}

impl CoreRule {
    pub fn threshold(threshold: f64) -> Self {
        CoreRule {
            threshold,
            drop_unit_clusters: false,
        }
    }

    /// Zero threshold with unit clusters removed.
    pub fn any_incidence_without_unit_clusters() -> Self {
        CoreRule {
            threshold: 0.0,
            drop_unit_clusters: true,
        }
    }
}

/// Vertices grouped by indiscernible binary signatures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoreDecomposition {
    /// Groups of at least two vertices sharing a nonzero signature.
    pub cores: Vec<Vec<VertexId>>,
    /// Vertices whose nonzero signature is shared with no other vertex.
    pub singleton_cores: Vec<VertexId>,
    /// Vertices with an all-zero signature.
    pub non_core: Vec<VertexId>,
}

impl CoreDecomposition {
    pub fn num_vertices(&self) -> usize {
        self.cores.iter().map(Vec::len).sum::<usize>()
            + self.singleton_cores.len()
            + self.non_core.len()
    }
}

/// Sorted list of clusters whose bit is set for `v`.
pub fn signature(h: &Hypergraph, ep: &EdgePartitioning, v: usize, rule: CoreRule) -> Vec<u32> {
    let d = h.degree(v);
    let mut ids: Vec<u32> = h
        .incident_edges(v)
        .iter()
        .map(|&e| ep.cluster_of(e as usize) as u32)
        .collect();
    ids.sort_unstable();
    let mut bits = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let c = ids[i];
        let mut j = i;
        while j < ids.len() && ids[j] == c {
            j += 1;
        }
        let count = j - i;
        let unit = rule.drop_unit_clusters && ep.cluster_size(c as usize) == 1;
        if !unit && count > 0 && count as f64 / d as f64 >= rule.threshold {
            bits.push(c);
        }
        i = j;
    }
    bits
}

/// Partitions the vertices into cores, singleton cores and the non-core list.
pub fn extract_cores(h: &Hypergraph, ep: &EdgePartitioning, rule: CoreRule) -> CoreDecomposition {
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut non_core = Vec::new();
    for v in 0..h.num_vertices() {
        let sig = signature(h, ep, v, rule);
        if sig.is_empty() {
            non_core.push(v as VertexId);
            continue;
        }
        let slot = *index.entry(sig).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(v as VertexId);
    }
    let mut out = CoreDecomposition {
        non_core,
        ..CoreDecomposition::default()
    };
    for g in groups {
        if g.len() == 1 {
            out.singleton_cores.push(g[0]);
        } else {
            out.cores.push(g);
        }
    }
    out
}
