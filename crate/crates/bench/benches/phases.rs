use std::hint::black_box;
use std::io::BufReader;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use roughpart::coarsen::{cc_hypergraph, contract, match_in_cores, match_noncore, MIN_COMPRESSION};
use roughpart::refine::fm_pass;
use roughpart::roughset::{build_edge_partitions, extract_cores};
use roughpart::synth::{preferential_attachment, write_symmetric_pattern};
use roughpart::{
    partition_kway, read_matrix_market, BisectionBalance, CoreRule, FmConfig, Hypergraph,
    Partition, PartitionConfig, WeightScheme,
};

fn matrix(rows: usize) -> (Vec<u8>, Hypergraph) {
    let mut mm = Vec::new();
    write_symmetric_pattern(rows, &preferential_attachment(rows, 2, 9), &mut mm).unwrap();
    let (h, _) = read_matrix_market(BufReader::new(&mm[..]), WeightScheme::UnitAll).unwrap();
    (mm, h)
}

fn phases(c: &mut Criterion) {
    let (mm, h) = matrix(5000);
    let s = cc_hypergraph(&h).unwrap().clamp(0.05, 0.95);
    let ep = build_edge_partitions(&h, s);
    let rule = CoreRule::any_incidence_without_unit_clusters();
    let cores = extract_cores(&h, &ep, rule);

    c.bench_function("ingest", |b| {
        b.iter(|| {
            read_matrix_market(BufReader::new(black_box(&mm[..])), WeightScheme::UnitAll).unwrap()
        })
    });
    c.bench_function("clustering_coefficient", |b| {
        b.iter(|| cc_hypergraph(black_box(&h)).unwrap())
    });
    c.bench_function("edge_partitions_and_cores", |b| {
        b.iter(|| {
            let ep = build_edge_partitions(black_box(&h), s);
            extract_cores(&h, &ep, rule)
        })
    });
    c.bench_function("matching_and_contraction", |b| {
        b.iter(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let (mut m, left) = match_in_cores(&h, &cores, u64::MAX, &mut rng);
            match_noncore(&h, &mut m, &left, MIN_COMPRESSION, u64::MAX, &mut rng);
            contract(&h, &m)
        })
    });

    let balance = BisectionBalance::symmetric(h.total_vertex_weight(), 0.02);
    let halves: Vec<u32> = (0..h.num_vertices()).map(|v| (v % 2) as u32).collect();
    let start = Partition::new(&h, 2, halves).unwrap();
    for (name, cfg) in [
        ("fm_pass_boundary", FmConfig::boundary()),
        ("fm_pass_early_exit", FmConfig::early_exit()),
    ] {
        c.bench_function(name, |b| {
            b.iter_batched(
                || start.clone(),
                |mut p| fm_pass(&h, &mut p, &balance, &cfg),
                BatchSize::SmallInput,
            )
        });
    }

    let mut group = c.benchmark_group("partition_kway");
    group.sample_size(10);
    for k in [2, 32] {
        group.bench_function(format!("k{k}"), |b| {
            b.iter(|| partition_kway(&h, &PartitionConfig::with_k(k)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, phases);
criterion_main!(benches);
