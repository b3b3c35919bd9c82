use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use roughpart::coarsen::{
    contract, match_in_cores, match_noncore, weighted_jaccard, MIN_COMPRESSION,
};
use roughpart::refine::{balancing_pass, fm_pass, project};
use roughpart::roughset::{build_edge_partitions, extract_cores};
use roughpart::{
    brute_force_bipartition, is_balanced, partition_cost, partition_kway, BisectionBalance,
    CoreRule, FmConfig, FmMode, Hypergraph, Partition, PartitionConfig,
};

fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(|n| {
        let edge = prop::collection::btree_set(0..n as u32, 1..=n.min(6));
        (
            prop::collection::vec(1u64..4, n),
            prop::collection::vec((edge, 1u64..5), 0..24),
        )
            .prop_map(move |(vw, edges)| {
                let (pins, ew): (Vec<Vec<u32>>, Vec<u64>) = edges
                    .into_iter()
                    .map(|(e, w)| (e.into_iter().collect(), w))
                    .unzip();
                Hypergraph::new(vw, ew, pins).unwrap()
            })
    })
}

fn with_assignment(max_n: usize, k: u32) -> impl Strategy<Value = (Hypergraph, Vec<u32>)> {
    hypergraph(max_n).prop_flat_map(move |h| {
        let n = h.num_vertices();
        (Just(h), prop::collection::vec(0..k, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jaccard_is_symmetric_and_bounded(h in hypergraph(12), a in 0usize..12, b in 0usize..12) {
        let n = h.num_vertices();
        let (u, v) = (a % n, b % n);
        prop_assume!(u != v);
        let j = weighted_jaccard(&h, u, v);
        prop_assert!((0.0..=1.0).contains(&j));
        prop_assert_eq!(j, weighted_jaccard(&h, v, u));
    }

    #[test]
    fn contraction_preserves_weight_and_cut(
        (h, asg) in with_assignment(16, 3),
        s in 0.05f64..0.95,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ep = build_edge_partitions(&h, s);
        let cores = extract_cores(&h, &ep, CoreRule::any_incidence_without_unit_clusters());
        prop_assert_eq!(cores.num_vertices(), h.num_vertices());
        let (mut m, left) = match_in_cores(&h, &cores, u64::MAX, &mut rng);
        match_noncore(&h, &mut m, &left, MIN_COMPRESSION, u64::MAX, &mut rng);
        prop_assert!(m.is_involution());
        let link = contract(&h, &m);
        prop_assert!(link.coarse.validate().is_empty());
        prop_assert_eq!(link.coarse.total_vertex_weight(), h.total_vertex_weight());
        for e in 0..link.coarse.num_hyperedges() {
            prop_assert!(link.coarse.edge_size(e) >= 2);
        }

        // Any coarse assignment, taken from the fine one through a
        // representative, projects to an equal-cost fine partition.
        let mut coarse_asg = vec![0; link.coarse.num_vertices()];
        for (v, &c) in link.coarse_id.iter().enumerate() {
            coarse_asg[c as usize] = asg[v];
        }
        let pc = Partition::new(&link.coarse, 3, coarse_asg).unwrap();
        let pf = project(&pc, &link).unwrap();
        prop_assert_eq!(partition_cost(&link.coarse, &pc), partition_cost(&h, &pf));
    }

    #[test]
    fn fm_never_raises_cost((h, asg) in with_assignment(20, 2), eps in 0.02f64..0.5, ee in any::<bool>()) {
        let mut p = Partition::new(&h, 2, asg).unwrap();
        prop_assume!(p.all_parts_nonempty());
        let balance = BisectionBalance::symmetric(h.total_vertex_weight(), eps);
        let cfg = FmConfig {
            mode: if ee { FmMode::EarlyExit } else { FmMode::Boundary },
            check_gains: true,
            ..FmConfig::default()
        };
        let before = partition_cost(&h, &p);
        let was_balanced = balance.is_balanced([p.part_weight(0), p.part_weight(1)]);
        let out = fm_pass(&h, &mut p, &balance, &cfg);
        prop_assert!(partition_cost(&h, &p) <= before);
        prop_assert_eq!(partition_cost(&h, &p) as i64 - before as i64, out.cost_delta);
        prop_assert!(p.all_parts_nonempty());
        if was_balanced {
            prop_assert!(balance.is_balanced([p.part_weight(0), p.part_weight(1)]));
        }
    }

    #[test]
    fn balancing_never_raises_violation((h, asg) in with_assignment(20, 2), eps in 0.02f64..0.5) {
        let mut p = Partition::new(&h, 2, asg).unwrap();
        prop_assume!(p.all_parts_nonempty());
        let balance = BisectionBalance::symmetric(h.total_vertex_weight(), eps);
        let before = balance.violation([p.part_weight(0), p.part_weight(1)]);
        let out = balancing_pass(&h, &mut p, &balance, &FmConfig::default());
        prop_assert!(out.violation_after <= before);
        prop_assert_eq!(balance.violation([p.part_weight(0), p.part_weight(1)]), out.violation_after);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn heuristic_never_beats_oracle(h in hypergraph(12), seed in any::<u64>()) {
        let eps = 0.2;
        let Ok(opt) = brute_force_bipartition(&h, eps) else { return Ok(()); };
        let cfg = PartitionConfig { epsilon: eps, seed, ..PartitionConfig::with_k(2) };
        let (p, stats) = partition_kway(&h, &cfg).unwrap();
        prop_assert_eq!(stats.cost, partition_cost(&h, &p));
        if is_balanced(&h, &p, eps) {
            prop_assert!(stats.cost >= opt.best_cost);
        }
    }

    #[test]
    fn oracle_ignores_labels(h in hypergraph(9), rot in 0usize..9) {
        let n = h.num_vertices();
        let relabel = |v: u32| ((v as usize + rot) % n) as u32;
        let mut vw = vec![0; n];
        for v in 0..n {
            vw[relabel(v as u32) as usize] = h.vertex_weight(v);
        }
        let mut pins: Vec<Vec<u32>> = (0..h.num_hyperedges())
            .map(|e| h.pins(e).iter().map(|&v| relabel(v)).collect())
            .collect();
        let mut ew = h.edge_weights().to_vec();
        pins.reverse();
        ew.reverse();
        let g = Hypergraph::new(vw, ew, pins).unwrap();
        let a = brute_force_bipartition(&h, 0.3).map(|r| r.best_cost).ok();
        let b = brute_force_bipartition(&g, 0.3).map(|r| r.best_cost).ok();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn kway_cost_is_sum_of_bisection_costs() {
    let h = roughpart::synth::random_hypergraph(640, 900, 2..6, 3);
    for k in [2, 3, 5, 8] {
        let (p, stats) = partition_kway(&h, &PartitionConfig::with_k(k)).unwrap();
        let sum: u64 = stats.bisections.iter().map(|b| b.cost).sum();
        assert_eq!(sum, partition_cost(&h, &p), "k={k}");
        assert_eq!(stats.bisections.len(), k - 1);
        assert!(p.all_parts_nonempty());
    }
}
