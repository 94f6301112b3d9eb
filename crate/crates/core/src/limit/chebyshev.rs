//! Chebyshev-inequality bounds on the bias from the mean and variance.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSide {
    /// Upper bound on the upper density (negative mean).
    Upper,
    /// Lower bound on the lower density (positive mean).
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebyshevBound {
    pub bound: f64,
    pub side: BoundSide,
}

impl ChebyshevBound {
    pub fn admits(&self, delta: f64) -> bool {
        match self.side {
            BoundSide::Upper => delta <= self.bound,
            BoundSide::Lower => delta >= self.bound,
        }
    }
}

/// `δ ≤ min(1, var/m²)` for `m < 0`, `δ ≥ max(0, 1 − var/m²)` for `m > 0`;
/// `None` when `m = 0`.
pub fn chebyshev_bound(mean: f64, variance: f64) -> Option<ChebyshevBound> {
    if mean == 0.0 || !mean.is_finite() {
        return None;
    }
    let ratio = variance / (mean * mean);
    Some(if mean < 0.0 {
        ChebyshevBound {
            bound: ratio.min(1.0),
            side: BoundSide::Upper,
        }
    } else {
        ChebyshevBound {
            bound: (1.0 - ratio).max(0.0),
            side: BoundSide::Lower,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = chebyshev_bound(-2.0, 0.5).unwrap();
        assert_eq!((b.bound, b.side), (0.125, BoundSide::Upper));
        let b = chebyshev_bound(2.0, 0.5).unwrap();
        assert_eq!((b.bound, b.side), (0.875, BoundSide::Lower));
        assert_eq!(chebyshev_bound(-1.0, 3.0).unwrap().bound, 1.0);
        assert_eq!(chebyshev_bound(1.0, 3.0).unwrap().bound, 0.0);
        assert!(chebyshev_bound(0.0, 1.0).is_none());
    }
}
