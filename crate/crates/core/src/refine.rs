//! Fiduccia–Mattheyses refinement of bisections and projection between
//! levels.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::balance::{side_weights, BisectionBalance};
use crate::coarsen::LevelLink;
use crate::error::{Error, Result};
use crate::hypergraph::{partition_cost, Hypergraph, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FmMode {
    /// All vertices are candidates; a pass stops after
    /// `early_exit_window` consecutive moves without a new best state.
    EarlyExit,
    /// Only vertices on cut hyperedges start as candidates; vertices join
    /// when a move touches one of their hyperedges.
    Boundary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FmConfig {
    pub mode: FmMode,
    pub max_passes: usize,
    pub early_exit_window: usize,
    /// Recompute every gain from scratch after each move and panic on a
    /// mismatch. Quadratic; meant for tests.
    pub check_gains: bool,
}

impl Default for FmConfig {
    fn default() -> Self {
        FmConfig {
            mode: FmMode::Boundary,
            max_passes: 2,
            early_exit_window: 50,
            check_gains: false,
        }
    }
}

impl FmConfig {
    pub fn early_exit() -> Self {
        FmConfig {
            mode: FmMode::EarlyExit,
            ..FmConfig::default()
        }
    }

    pub fn boundary() -> Self {
        FmConfig::default()
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_passes == 0 {
            return Err(Error::Config("max_passes must be at least 1".into()));
        }
        if self.early_exit_window == 0 {
            return Err(Error::Config("early_exit_window must be at least 1".into()));
        }
        Ok(())
    }
}

/// Which prefix of a pass is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Objective {
    /// Lowest cost, then lowest balance violation. Never raises the cost.
    Cost,
    /// Lowest balance violation, then lowest cost.
    BalanceFirst,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PassOutcome {
    /// Change in cost; never positive for [`fm_pass`].
    pub cost_delta: i64,
    pub violation_before: u64,
    pub violation_after: u64,
    pub moves_tried: usize,
    pub moves_kept: usize,
}

impl PassOutcome {
    pub fn improved(&self) -> bool {
        self.cost_delta < 0 || self.violation_after < self.violation_before
    }
}

/// Candidates skipped per side while looking for an admissible move.
const MAX_DEFERRED: usize = 16;

struct Pass<'a> {
    h: &'a Hypergraph,
    balance: &'a BisectionBalance,
    pins_in: Vec<[u32; 2]>,
    gain: Vec<i64>,
    locked: Vec<bool>,
    queued: Vec<bool>,
    heaps: [BinaryHeap<(i64, Reverse<u32>)>; 2],
    weights: [u64; 2],
    counts: [usize; 2],
    touched: Vec<u32>,
    stamp: Vec<u32>,
    clock: u32,
    /// Intermediate states may exceed a side limit by this much.
    slack: u64,
}

fn vertex_gain(h: &Hypergraph, p: &Partition, pins_in: &[[u32; 2]], v: usize) -> i64 {
    let from = p.part(v) as usize;
    let to = 1 - from;
    h.incident_edges(v)
        .iter()
        .map(|&e| {
            let c = pins_in[e as usize];
            let w = h.edge_weight(e as usize) as i64;
            let mut g = 0;
            if c[from] == 1 {
                g += w;
            }
            if c[to] == 0 {
                g -= w;
            }
            g
        })
        .sum()
}

fn count_pins(h: &Hypergraph, p: &Partition) -> Vec<[u32; 2]> {
    (0..h.num_hyperedges())
        .map(|e| {
            let mut c = [0u32; 2];
            for &v in h.pins(e) {
                c[p.part(v as usize) as usize] += 1;
            }
            c
        })
        .collect()
}

impl<'a> Pass<'a> {
    fn new(h: &'a Hypergraph, p: &Partition, balance: &'a BisectionBalance, mode: FmMode) -> Self {
        let n = h.num_vertices();
        let pins_in = count_pins(h, p);
        let gain: Vec<i64> = (0..n).map(|v| vertex_gain(h, p, &pins_in, v)).collect();
        let sizes = p.part_sizes();
        let mut pass = Pass {
            h,
            balance,
            pins_in,
            gain,
            locked: vec![false; n],
            queued: vec![false; n],
            heaps: [BinaryHeap::new(), BinaryHeap::new()],
            weights: side_weights(p.part_weights()),
            counts: [sizes[0], sizes[1]],
            touched: Vec::new(),
            stamp: vec![0; n],
            clock: 0,
            slack: h.max_vertex_weight(),
        };
        for v in 0..n {
            let eligible = match mode {
                FmMode::EarlyExit => true,
                FmMode::Boundary => pass.is_boundary(p, v),
            };
            if eligible {
                pass.enqueue(p, v);
            }
        }
        pass
    }

    fn is_boundary(&self, p: &Partition, v: usize) -> bool {
        let other = 1 - p.part(v) as usize;
        self.h
            .incident_edges(v)
            .iter()
            .any(|&e| self.pins_in[e as usize][other] > 0)
    }

    fn enqueue(&mut self, p: &Partition, v: usize) {
        self.queued[v] = true;
        self.heaps[p.part(v) as usize].push((self.gain[v], Reverse(v as u32)));
    }

    fn admissible(&self, v: usize, from: usize, current_violation: u64) -> bool {
        if self.counts[from] <= 1 {
            return false;
        }
        let w = self.h.vertex_weight(v);
        let mut next = self.weights;
        next[from] -= w;
        next[1 - from] += w;
        let relaxed = next[0].saturating_sub(self.balance.max(0) + self.slack)
            + next[1].saturating_sub(self.balance.max(1) + self.slack);
        relaxed == 0 || self.balance.violation(next) < current_violation
    }

    /// Highest-gain admissible vertex on side `from`, left on top of its heap.
    fn candidate(
        &mut self,
        from: usize,
        violation: u64,
        deferred: &mut Vec<(i64, u32)>,
    ) -> Option<(i64, u32)> {
        let mut skipped = 0;
        while let Some(&(g, Reverse(v))) = self.heaps[from].peek() {
            let vu = v as usize;
            if self.locked[vu] || self.gain[vu] != g {
                self.heaps[from].pop();
                continue;
            }
            if self.admissible(vu, from, violation) {
                return Some((g, v));
            }
            if skipped == MAX_DEFERRED {
                return None;
            }
            self.heaps[from].pop();
            deferred.push((g, v));
            skipped += 1;
        }
        None
    }

    fn apply_move(&mut self, p: &mut Partition, v: usize) {
        let h = self.h;
        let from = p.part(v) as usize;
        let to = 1 - from;
        self.clock += 1;
        self.locked[v] = true;
        for &e in h.incident_edges(v) {
            let e = e as usize;
            let w = h.edge_weight(e) as i64;
            let before = self.pins_in[e];
            if before[to] == 0 {
                for &u in h.pins(e) {
                    self.bump(u as usize, w);
                }
            } else if before[to] == 1 {
                if let Some(&u) = h
                    .pins(e)
                    .iter()
                    .find(|&&u| p.part(u as usize) as usize == to)
                {
                    self.bump(u as usize, -w);
                }
            }
            self.pins_in[e][from] -= 1;
            self.pins_in[e][to] += 1;
            let after = self.pins_in[e];
            if after[from] == 0 {
                for &u in h.pins(e) {
                    self.bump(u as usize, -w);
                }
            } else if after[from] == 1 {
                if let Some(&u) = h
                    .pins(e)
                    .iter()
                    .find(|&&u| u as usize != v && p.part(u as usize) as usize == from)
                {
                    self.bump(u as usize, w);
                }
            }
        }
        let wv = h.vertex_weight(v);
        self.weights[from] -= wv;
        self.weights[to] += wv;
        self.counts[from] -= 1;
        self.counts[to] += 1;
        p.move_vertex(v, to as u32, wv);
        let touched = std::mem::take(&mut self.touched);
        for &u in &touched {
            self.enqueue(p, u as usize);
        }
        self.touched = touched;
        self.touched.clear();
    }

    #[inline]
    fn bump(&mut self, u: usize, delta: i64) {
        if self.locked[u] {
            return;
        }
        self.gain[u] += delta;
        if self.stamp[u] != self.clock {
            self.stamp[u] = self.clock;
            self.touched.push(u as u32);
        }
    }

    fn verify_gains(&self, p: &Partition) {
        let fresh = count_pins(self.h, p);
        assert_eq!(fresh, self.pins_in, "pin counts drifted");
        for v in 0..self.h.num_vertices() {
            if !self.locked[v] {
                assert_eq!(
                    self.gain[v],
                    vertex_gain(self.h, p, &fresh, v),
                    "incremental gain of vertex {v} drifted"
                );
            }
        }
    }
}

fn run_pass(
    h: &Hypergraph,
    p: &mut Partition,
    balance: &BisectionBalance,
    cfg: &FmConfig,
    objective: Objective,
) -> PassOutcome {
    debug_assert_eq!(p.k(), 2);
    let cost0 = partition_cost(h, p) as i64;
    let violation0 = balance.violation(side_weights(p.part_weights()));
    let mut pass = Pass::new(h, p, balance, cfg.mode);

    let key = |cost: i64, violation: u64| match objective {
        Objective::Cost => (cost, violation as i64),
        Objective::BalanceFirst => (violation as i64, cost),
    };
    let mut best = key(cost0, violation0);
    let mut best_len = 0;
    let mut cost = cost0;
    let mut violation = violation0;
    let mut moves: Vec<u32> = Vec::new();
    let mut since_best = 0usize;
    let mut deferred = Vec::new();

    loop {
        let c0 = pass.candidate(0, violation, &mut deferred);
        let c1 = pass.candidate(1, violation, &mut deferred);
        let chosen = match (c0, c1) {
            (None, None) => None,
            (Some(a), None) => Some((0, a)),
            (None, Some(b)) => Some((1, b)),
            (Some(a), Some(b)) => {
                if a.0 != b.0 {
                    Some(if a.0 > b.0 { (0, a) } else { (1, b) })
                } else {
                    // Equal gains: move toward the side further below its target.
                    let slack0 = balance.target(0) - pass.weights[0] as f64;
                    let slack1 = balance.target(1) - pass.weights[1] as f64;
                    Some(if slack1 >= slack0 { (0, a) } else { (1, b) })
                }
            }
        };
        let Some((from, (g, v))) = chosen else {
            break;
        };
        pass.heaps[from].pop();
        pass.apply_move(p, v as usize);
        for (g, u) in deferred.drain(..) {
            if !pass.locked[u as usize] && pass.gain[u as usize] == g {
                pass.heaps[from_part(p, u)].push((g, Reverse(u)));
            }
        }
        if cfg.check_gains {
            pass.verify_gains(p);
        }
        moves.push(v);
        cost -= g;
        violation = balance.violation(pass.weights);
        let k = key(cost, violation);
        let keepable = objective == Objective::BalanceFirst || violation <= violation0;
        if keepable && k < best {
            best = k;
            best_len = moves.len();
            since_best = 0;
        } else {
            since_best += 1;
            if cfg.mode == FmMode::EarlyExit && since_best >= cfg.early_exit_window {
                break;
            }
        }
    }

    let tried = moves.len();
    for &v in moves[best_len..].iter().rev() {
        let v = v as usize;
        let back = 1 - p.part(v);
        p.move_vertex(v, back, h.vertex_weight(v));
    }
    let (best_cost, best_violation) = match objective {
        Objective::Cost => (best.0, best.1 as u64),
        Objective::BalanceFirst => (best.1, best.0 as u64),
    };
    PassOutcome {
        cost_delta: best_cost - cost0,
        violation_before: violation0,
        violation_after: best_violation,
        moves_tried: tried,
        moves_kept: best_len,
    }
}

#[inline]
fn from_part(p: &Partition, v: u32) -> usize {
    p.part(v as usize) as usize
}

/// One FM pass. Intermediate states may overshoot a side limit by the
/// heaviest vertex weight; the kept prefix is the one with the lowest cost
/// (lowest violation on ties) among states no less balanced than the input,
/// so the cost never increases and a balanced input stays balanced.
pub fn fm_pass(
    h: &Hypergraph,
    p: &mut Partition,
    balance: &BisectionBalance,
    cfg: &FmConfig,
) -> PassOutcome {
    run_pass(h, p, balance, cfg, Objective::Cost)
}

/// One FM pass that ranks prefixes by balance violation before cost. Used
/// to repair unbalanced bisections; may raise the cost.
pub fn balancing_pass(
    h: &Hypergraph,
    p: &mut Partition,
    balance: &BisectionBalance,
    cfg: &FmConfig,
) -> PassOutcome {
    let cfg = FmConfig {
        mode: FmMode::EarlyExit,
        ..cfg.clone()
    };
    run_pass(h, p, balance, &cfg, Objective::BalanceFirst)
}

/// Up to `cfg.max_passes` passes of [`fm_pass`], stopping at the first pass
/// without improvement. Returns the total cost change.
pub fn refine(
    h: &Hypergraph,
    p: &mut Partition,
    balance: &BisectionBalance,
    cfg: &FmConfig,
) -> i64 {
    let mut delta = 0;
    for _ in 0..cfg.max_passes {
        let out = fm_pass(h, p, balance, cfg);
        delta += out.cost_delta;
        if !out.improved() {
            break;
        }
    }
    delta
}

/// Repeats [`balancing_pass`] until the bisection is balanced or a pass
/// makes no progress.
pub fn rebalance(h: &Hypergraph, p: &mut Partition, balance: &BisectionBalance, cfg: &FmConfig) {
    for _ in 0..cfg.max_passes.max(8) {
        if balance.is_balanced(side_weights(p.part_weights())) {
            return;
        }
        if !balancing_pass(h, p, balance, cfg).improved() {
            return;
        }
    }
}

/// Projects a coarse partition onto the finer level of `link`.
pub fn project(p_coarse: &Partition, link: &LevelLink) -> Result<Partition> {
    if p_coarse.len() != link.coarse.num_vertices() {
        return Err(Error::SizeMismatch {
            expected: link.coarse.num_vertices(),
            found: p_coarse.len(),
        });
    }
    let assignment = link
        .coarse_id
        .iter()
        .map(|&c| p_coarse.part(c as usize))
        .collect();
    // Contraction conserves vertex weight, so part weights carry over.
    Ok(Partition::from_parts(
        p_coarse.k(),
        assignment,
        p_coarse.part_weights().to_vec(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarsen::{contract, Matching};
    use crate::fixtures::{path4, worked_example};
    use crate::ingest::WeightScheme;

    fn checked(mode: FmMode) -> FmConfig {
        FmConfig {
            mode,
            check_gains: true,
            ..FmConfig::default()
        }
    }

    #[test]
    fn zero_cut_is_left_alone() {
        let h = Hypergraph::unweighted(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let balance = BisectionBalance::symmetric(4, 0.1);
        for mode in [FmMode::EarlyExit, FmMode::Boundary] {
            let mut p = Partition::new(&h, 2, vec![0, 0, 1, 1]).unwrap();
            let out = fm_pass(&h, &mut p, &balance, &checked(mode));
            assert_eq!(out.cost_delta, 0);
            assert_eq!(p.assignment(), &[0, 0, 1, 1]);
        }
        let mut p = Partition::new(&h, 2, vec![0, 0, 1, 1]).unwrap();
        let out = fm_pass(&h, &mut p, &balance, &checked(FmMode::Boundary));
        assert_eq!(out.moves_tried, 0);
    }

    #[test]
    fn path_alternating_reaches_optimum() {
        let h = path4();
        let balance = BisectionBalance::symmetric(4, 0.1);
        for mode in [FmMode::EarlyExit, FmMode::Boundary] {
            let mut p = Partition::new(&h, 2, vec![0, 1, 0, 1]).unwrap();
            assert_eq!(partition_cost(&h, &p), 3);
            let out = fm_pass(&h, &mut p, &balance, &checked(mode));
            assert_eq!(partition_cost(&h, &p), 1, "{mode:?}");
            assert_eq!(out.cost_delta, -2);
            assert!(balance.is_balanced(side_weights(p.part_weights())));
        }
    }

    #[test]
    fn gains_stay_exact_on_worked_example() {
        let h = worked_example(WeightScheme::EdgeSize);
        let balance = BisectionBalance::symmetric(16, 0.25);
        let mut p = Partition::new(&h, 2, (0..16).map(|v| (v % 2) as u32).collect()).unwrap();
        let before = partition_cost(&h, &p);
        let out = fm_pass(&h, &mut p, &balance, &checked(FmMode::EarlyExit));
        assert_eq!(
            partition_cost(&h, &p) as i64,
            before as i64 + out.cost_delta
        );
        assert!(out.cost_delta <= 0);
    }

    #[test]
    fn balancing_pass_repairs_one_vs_rest() {
        let h = path4();
        let balance = BisectionBalance::symmetric(4, 0.1);
        let mut p = Partition::new(&h, 2, vec![0, 1, 0, 0]).unwrap();
        rebalance(&h, &mut p, &balance, &FmConfig::early_exit());
        assert!(balance.is_balanced(side_weights(p.part_weights())));
    }

    #[test]
    fn moves_never_empty_a_side() {
        let h = Hypergraph::unweighted(2, vec![vec![0, 1]]).unwrap();
        let balance = BisectionBalance::symmetric(2, 0.9);
        let mut p = Partition::new(&h, 2, vec![0, 1]).unwrap();
        fm_pass(&h, &mut p, &balance, &checked(FmMode::EarlyExit));
        assert!(p.all_parts_nonempty());
    }

    #[test]
    fn projection_through_worked_contraction() {
        let h = worked_example(WeightScheme::UnitAll);
        let mut m = Matching::empty(16);
        m.pair(3, 7);
        m.pair(11, 15);
        let link = contract(&h, &m);
        let (a, b) = (link.coarse_id[3], link.coarse_id[11]);
        let asg = (0..14).map(|c| u32::from(c == a || c == b)).collect();
        let pc = Partition::new(&link.coarse, 2, asg).unwrap();
        let pf = project(&pc, &link).unwrap();
        for v in [3, 7, 11, 15] {
            assert_eq!(pf.part(v), 1);
        }
        assert_eq!(pf, Partition::new(&h, 2, pf.assignment().to_vec()).unwrap());
        assert_eq!(partition_cost(&link.coarse, &pc), partition_cost(&h, &pf));
        assert_eq!(partition_cost(&h, &pf), 2);
    }

    #[test]
    fn identity_projection() {
        let h = path4();
        let link = contract(&h, &Matching::empty(4));
        let p = Partition::new(&link.coarse, 2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(project(&p, &link).unwrap().assignment(), p.assignment());
        let wrong =
            Partition::new(&Hypergraph::unweighted(3, vec![]).unwrap(), 2, vec![0; 3]).unwrap();
        assert!(project(&wrong, &link).is_err());
    }
}
