//! Weight bounds for a single bisection.

use crate::hypergraph::BALANCE_SLACK;

/// Allowed weight range for the two sides of a bisection.
///
/// Bounds are integral: side `p` may weigh at most `max[p]`, and therefore
/// at least `total - max[1 - p]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BisectionBalance {
    total: u64,
    max: [u64; 2],
    target: [f64; 2],
}

impl BisectionBalance {
    /// Both sides within `(1 ± ε)` of half the total weight.
    pub fn symmetric(total: u64, epsilon: f64) -> Self {
        let half = total as f64 / 2.0;
        let max = (half * (1.0 + epsilon) + BALANCE_SLACK).floor() as u64;
        BisectionBalance {
            total,
            max: [max, max],
            target: [half, half],
        }
    }

    /// Side 0 weight restricted to `[lo, hi]`, aiming at `target0`.
    pub fn side0_range(total: u64, lo: f64, hi: f64, target0: f64) -> Self {
        let max0 = ((hi + BALANCE_SLACK).floor().max(0.0) as u64).min(total);
        let min0 = ((lo - BALANCE_SLACK).ceil().max(0.0) as u64).min(total);
        BisectionBalance {
            total,
            max: [max0, total - min0],
            target: [target0, total as f64 - target0],
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    #[inline]
    pub fn max(&self, side: usize) -> u64 {
        self.max[side]
    }

    #[inline]
    pub fn min(&self, side: usize) -> u64 {
        self.total.saturating_sub(self.max[1 - side])
    }

    pub fn target(&self, side: usize) -> f64 {
        self.target[side]
    }

    /// Whether some split of the total weight satisfies both bounds.
    pub fn admits_some_split(&self) -> bool {
        self.max[0] + self.max[1] >= self.total
    }

    /// Total weight above the per-side maxima.
    #[inline]
    pub fn violation(&self, weights: [u64; 2]) -> u64 {
        weights[0].saturating_sub(self.max[0]) + weights[1].saturating_sub(self.max[1])
    }

    #[inline]
    pub fn is_balanced(&self, weights: [u64; 2]) -> bool {
        self.violation(weights) == 0
    }

    /// Largest relative deviation from the side targets.
    pub fn imbalance(&self, weights: [u64; 2]) -> f64 {
        (0..2)
            .map(|p| {
                if self.target[p] > 0.0 {
                    (weights[p] as f64 - self.target[p]).abs() / self.target[p]
                } else {
                    weights[p] as f64
                }
            })
            .fold(0.0, f64::max)
    }
}

pub(crate) fn side_weights(part_weights: &[u64]) -> [u64; 2] {
    [part_weights[0], part_weights[1]]
}
