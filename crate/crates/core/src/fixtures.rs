//! Small hand-built hypergraphs shared by tests, benches and examples.

use crate::hypergraph::{Hypergraph, VertexId};
use crate::ingest::WeightScheme;

/// Pins of the 16-vertex, 16-hyperedge worked example, 1-based as drawn.
pub const WORKED_EXAMPLE_PINS: [&[VertexId]; 16] = [
    &[1, 2, 5],      // e1
    &[2, 4, 8],      // e2
    &[3, 4, 6],      // e3
    &[4, 8, 12],     // e4
    &[1, 10, 13],    // e5
    &[7, 9],         // e6
    &[2, 3, 5, 7],   // e7
    &[4, 8],         // e8
    &[3, 6, 9],      // e9
    &[1, 5, 10],     // e10
    &[6, 9, 11],     // e11
    &[4, 8, 12],     // e12
    &[10, 13],       // e13
    &[7, 9, 11, 14], // e14
    &[2, 15],        // e15
    &[4, 8, 12, 16], // e16
];

/// The worked example with 0-based ids (`v1` is vertex 0, `e1` hyperedge 0).
pub fn worked_example(scheme: WeightScheme) -> Hypergraph {
    let pins = WORKED_EXAMPLE_PINS
        .iter()
        .map(|e| e.iter().map(|v| v - 1).collect())
        .collect();
    let h = Hypergraph::unweighted(16, pins).expect("static fixture is well formed");
    scheme.apply(h)
}

/// Path `{a,b}, {b,c}, {c,d}` on four unit vertices.
pub fn path4() -> Hypergraph {
    Hypergraph::unweighted(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).expect("static fixture")
}
