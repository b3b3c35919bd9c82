//! Multilevel hypergraph partitioning with rough-set clustering.
//!
//! The pipeline coarsens a hypergraph by matching vertices inside cores of
//! indiscernible vertices, bisects the coarsest level, and refines with
//! Fiduccia–Mattheyses passes on the way back up. Recursive bisection
//! produces `k` parts.
//!
//! ```
//! use roughpart::{fixtures, partition_kway, PartitionConfig, WeightScheme};
//!
//! let h = fixtures::worked_example(WeightScheme::UnitAll);
//! let (p, stats) = partition_kway(&h, &PartitionConfig::with_k(4)).unwrap();
//! assert_eq!(p.part_weights(), &[4, 4, 4, 4]);
//! assert_eq!(stats.cost, roughpart::partition_cost(&h, &p));
//! ```

pub mod balance;
pub mod coarsen;
pub mod driver;
pub mod error;
pub mod fixtures;
pub mod hypergraph;
pub mod ingest;
pub mod initpart;
pub mod oracle;
pub mod refine;
pub mod roughset;
pub mod synth;

pub use balance::BisectionBalance;
pub use coarsen::{LevelLink, Matching, ThresholdState};
pub use driver::{
    bipartition, partition_kway, run_many, BalanceBudget, ClusteringThreshold, PartitionConfig,
    PhaseTimes, RunStats, RunSummary, SimilarityThreshold, StatsDocument,
};
pub use error::{Error, Result};
pub use hypergraph::{
    connectivity_degree, is_balanced, max_imbalance, partition_cost, EdgeId, Hypergraph, Partition,
    VertexId,
};
pub use ingest::{read_matrix_market, read_partition, write_partition, IngestStats, WeightScheme};
pub use initpart::InitMethod;
pub use oracle::{brute_force_bipartition, OracleResult};
pub use refine::{FmConfig, FmMode};
pub use roughset::{CoreDecomposition, CoreRule, EdgePartitioning};
