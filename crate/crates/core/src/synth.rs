//! Seeded synthetic inputs for tests and benchmarks.

use std::io::Write;
use std::ops::Range;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hypergraph::{Hypergraph, VertexId};

/// `m` hyperedges over `n` unit vertices, each with a uniformly drawn size
/// in `sizes` (capped at `n`) and distinct uniformly drawn pins.
pub fn random_hypergraph(n: usize, m: usize, sizes: Range<usize>, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pins = (0..m)
        .map(|_| {
            let size = rng.gen_range(sizes.clone()).min(n);
            sample(&mut rng, n, size)
                .into_iter()
                .map(|v| v as VertexId)
                .collect()
        })
        .collect();
    Hypergraph::unweighted(n, pins).expect("generated pins are in range")
}

/// Symmetric pattern of an undirected preferential-attachment graph: each
/// new row links to `links` distinct earlier rows chosen with probability
/// proportional to their degree. Returns the lower-triangle entries
/// `(row, col)` with `row > col`, 0-based.
pub fn preferential_attachment(n: usize, links: usize, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(n * links);
    // Each endpoint appears once per incident edge, so uniform draws from
    // this list are degree-proportional.
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * n * links);
    let seed_rows = (links + 1).min(n);
    for i in 1..seed_rows {
        for j in 0..i {
            entries.push((i as u32, j as u32));
            endpoints.extend([i as u32, j as u32]);
        }
    }
    let mut chosen: Vec<u32> = Vec::with_capacity(links);
    for i in seed_rows..n {
        chosen.clear();
        while chosen.len() < links {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        chosen.sort_unstable();
        for &t in &chosen {
            entries.push((i as u32, t));
            endpoints.extend([i as u32, t]);
        }
    }
    entries
}

/// Writes a symmetric pattern matrix in Matrix Market coordinate format.
pub fn write_symmetric_pattern<W: Write>(
    n: usize,
    lower: &[(u32, u32)],
    mut sink: W,
) -> Result<()> {
    writeln!(sink, "%%MatrixMarket matrix coordinate pattern symmetric")?;
    writeln!(sink, "{n} {n} {}", lower.len())?;
    for &(i, j) in lower {
        writeln!(sink, "{} {}", i + 1, j + 1)?;
    }
    Ok(())
}
