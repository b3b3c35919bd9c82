//! Initial bisections of the coarsest hypergraph.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::balance::{side_weights, BisectionBalance};
use crate::error::{Error, Result};
use crate::hypergraph::{partition_cost, Hypergraph, Partition};
use crate::refine::{rebalance, refine, FmConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitMethod {
    Random,
    Linear,
    FmSeeded,
}

impl InitMethod {
    pub const ALL: [InitMethod; 3] = [InitMethod::Random, InitMethod::Linear, InitMethod::FmSeeded];
}

impl fmt::Display for InitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InitMethod::Random => "random",
            InitMethod::Linear => "linear",
            InitMethod::FmSeeded => "fm-seeded",
        })
    }
}

impl FromStr for InitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(InitMethod::Random),
            "linear" => Ok(InitMethod::Linear),
            "fm-seeded" | "fm" => Ok(InitMethod::FmSeeded),
            other => Err(Error::Config(format!(
                "unknown initial partitioning method `{other}`"
            ))),
        }
    }
}

fn check_feasible(h: &Hypergraph, balance: &BisectionBalance) -> Result<()> {
    if h.num_vertices() < 2 {
        return Err(Error::InvalidHypergraph(format!(
            "bisection needs at least 2 vertices, got {}",
            h.num_vertices()
        )));
    }
    let heaviest = h.max_vertex_weight();
    if !balance.admits_some_split() || heaviest > balance.max(0).max(balance.max(1)) {
        return Err(Error::Infeasible(format!(
            "no split of total weight {} fits the side limits {} and {} (heaviest vertex {})",
            balance.total(),
            balance.max(0),
            balance.max(1),
            heaviest
        )));
    }
    Ok(())
}

/// Moves one vertex into an empty side, preferring the lightest vertex.
fn fill_empty_side(h: &Hypergraph, asg: &mut [u32]) {
    for side in 0..2u32 {
        if asg.iter().all(|&p| p != side) {
            let v = (0..asg.len())
                .min_by_key(|&v| (h.vertex_weight(v), v))
                .expect("at least two vertices");
            asg[v] = side;
        }
    }
}

fn random_assignment<R: Rng + ?Sized>(
    h: &Hypergraph,
    balance: &BisectionBalance,
    rng: &mut R,
) -> Vec<u32> {
    let n = h.num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut asg = vec![0u32; n];
    let mut w = [0u64; 2];
    for v in order {
        let wv = h.vertex_weight(v);
        let first = rng.gen_range(0..2usize);
        let side = if w[first] + wv <= balance.max(first) {
            first
        } else if w[1 - first] + wv <= balance.max(1 - first) {
            1 - first
        } else {
            // Neither fits: overload the side with more room left.
            let room = |s: usize| balance.max(s) as i128 - w[s] as i128;
            if room(first) >= room(1 - first) {
                first
            } else {
                1 - first
            }
        };
        asg[v] = side as u32;
        w[side] += wv;
    }
    asg
}

fn linear_assignment(h: &Hypergraph, balance: &BisectionBalance, start: usize) -> Vec<u32> {
    let n = h.num_vertices();
    let other = 1 - start;
    let mut asg = vec![other as u32; n];
    let mut w = 0u64;
    for (v, slot) in asg.iter_mut().enumerate() {
        let wv = h.vertex_weight(v);
        if w as f64 >= balance.target(start) || w + wv > balance.max(start) {
            break;
        }
        *slot = start as u32;
        w += wv;
    }
    asg
}

/// One candidate bisection.
///
/// Random and linear candidates fill sides greedily under the side limits;
/// the fm-seeded candidate starts from one random vertex against the rest and
/// is repaired and improved by FM.
pub fn generate_candidate<R: Rng + ?Sized>(
    h: &Hypergraph,
    method: InitMethod,
    balance: &BisectionBalance,
    fm: &FmConfig,
    rng: &mut R,
) -> Result<Partition> {
    check_feasible(h, balance)?;
    let n = h.num_vertices();
    let mut asg = match method {
        InitMethod::Random => random_assignment(h, balance, rng),
        InitMethod::Linear => linear_assignment(h, balance, rng.gen_range(0..2)),
        InitMethod::FmSeeded => {
            let mut asg = vec![0u32; n];
            asg[rng.gen_range(0..n)] = 1;
            asg
        }
    };
    fill_empty_side(h, &mut asg);
    let mut p = Partition::new(h, 2, asg)?;
    if method == InitMethod::FmSeeded {
        rebalance(h, &mut p, balance, fm);
        loop {
            if refine(h, &mut p, balance, fm) >= 0 {
                break;
            }
        }
    }
    Ok(p)
}

/// Index of the best candidate: the cheapest balanced one (lowest index on
/// ties), or the least imbalanced one if none is balanced.
pub fn select_best(
    candidates: &[Partition],
    h: &Hypergraph,
    balance: &BisectionBalance,
) -> Result<usize> {
    if candidates.is_empty() {
        return Err(Error::Config("no initial partition candidates".into()));
    }
    let balanced = candidates
        .iter()
        .enumerate()
        .filter(|(_, p)| balance.is_balanced(side_weights(p.part_weights())))
        .min_by_key(|&(i, p)| (partition_cost(h, p), i));
    if let Some((i, _)) = balanced {
        return Ok(i);
    }
    let mut best = 0;
    let mut best_imb = f64::INFINITY;
    for (i, p) in candidates.iter().enumerate() {
        let imb = balance.imbalance(side_weights(p.part_weights()));
        if imb < best_imb {
            best = i;
            best_imb = imb;
        }
    }
    Ok(best)
}

/// Generates `repeats` candidates per method, refines each with FM and
/// returns the best.
pub fn initial_partition<R: Rng + ?Sized>(
    h: &Hypergraph,
    balance: &BisectionBalance,
    repeats: usize,
    fm: &FmConfig,
    rng: &mut R,
) -> Result<Partition> {
    if repeats == 0 {
        return Err(Error::Config("init repeats must be at least 1".into()));
    }
    let mut candidates = Vec::with_capacity(3 * repeats);
    for method in InitMethod::ALL {
        for _ in 0..repeats {
            let mut p = generate_candidate(h, method, balance, fm, rng)?;
            if !balance.is_balanced(side_weights(p.part_weights())) {
                rebalance(h, &mut p, balance, fm);
            }
            refine(h, &mut p, balance, fm);
            candidates.push(p);
        }
    }
    let best = select_best(&candidates, h, balance)?;
    Ok(candidates.swap_remove(best))
}
