//! Exhaustive reference bisection for small hypergraphs.

use crate::error::{Error, Result};
use crate::hypergraph::{is_balanced, partition_cost, Hypergraph, Partition};

/// Largest hypergraph the oracle accepts.
pub const MAX_ORACLE_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub best_cost: u64,
    /// The first optimal split in enumeration order.
    pub partition: Partition,
    /// Optimal splits, counting each pair of mirror images once.
    pub count_of_optima: usize,
}

/// Minimum connectivity-minus-one cost over every balanced bisection with
/// both parts non-empty. Vertex 0 is pinned to part 0.
pub fn brute_force_bipartition(h: &Hypergraph, epsilon: f64) -> Result<OracleResult> {
    let n = h.num_vertices();
    if n > MAX_ORACLE_VERTICES {
        return Err(Error::Config(format!(
            "oracle handles at most {MAX_ORACLE_VERTICES} vertices, got {n}"
        )));
    }
    if n < 2 {
        return Err(Error::Infeasible(
            "bisection needs at least 2 vertices".into(),
        ));
    }
    let mut best: Option<(u64, Partition)> = None;
    let mut count = 0;
    let mut p = Partition::new(h, 2, vec![0; n])?;
    for mask in 1u32..(1 << (n - 1)) {
        for v in 1..n {
            let side = (mask >> (v - 1)) & 1;
            if p.part(v) != side {
                p.move_vertex(v, side, h.vertex_weight(v));
            }
        }
        if !is_balanced(h, &p, epsilon) {
            continue;
        }
        let cost = partition_cost(h, &p);
        match &best {
            Some((c, _)) if cost > *c => {}
            Some((c, _)) if cost == *c => count += 1,
            _ => {
                best = Some((cost, p.clone()));
                count = 1;
            }
        }
    }
    let (best_cost, partition) = best.ok_or_else(|| {
        Error::Infeasible(format!(
            "no bisection satisfies the balance tolerance {epsilon}"
        ))
    })?;
    Ok(OracleResult {
        best_cost,
        partition,
        count_of_optima: count,
    })
}
