//! Binomial estimates for Monte Carlo switching statistics.

use serde::{Deserialize, Serialize};

/// z-score of the two-sided 95% normal interval.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Proportion estimate with a Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinomialEstimate {
    pub successes: u64,
    pub trials: u64,
    pub p: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl BinomialEstimate {
    /// Wilson score interval at 95% confidence. Panics if `trials == 0`.
    pub fn wilson(successes: u64, trials: u64) -> Self {
        assert!(trials > 0, "binomial estimate needs at least one trial");
        assert!(successes <= trials);
        let n = trials as f64;
        let p = successes as f64 / n;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / n;
        let centre = (p + z2 / (2.0 * n)) / denom;
        let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        Self {
            successes,
            trials,
            p,
            ci_low: if successes == 0 {
                0.0
            } else {
                (centre - half).max(0.0)
            },
            ci_high: if successes == trials {
                1.0
            } else {
                (centre + half).min(1.0)
            },
        }
    }

    /// True when the two 95% intervals overlap.
    pub fn overlaps(&self, other: &BinomialEstimate) -> bool {
        self.ci_low <= other.ci_high && other.ci_low <= self.ci_high
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_bounds_contain_estimate() {
        for (k, n) in [(0, 10), (5, 10), (10, 10), (37, 500)] {
            let e = BinomialEstimate::wilson(k, n);
            assert!(e.ci_low <= e.p && e.p <= e.ci_high, "{e:?}");
            assert!(e.ci_low >= 0.0 && e.ci_high <= 1.0);
        }
    }

    #[test]
    fn wilson_matches_reference_value() {
        // 50/100: centre 0.5, half-width 1.96*sqrt(.25/100 + 3.8415/40000)/1.038415
        let e = BinomialEstimate::wilson(50, 100);
        assert!((e.ci_low - 0.403_831_7).abs() < 1e-6, "{}", e.ci_low);
        assert!((e.ci_high - 0.596_168_3).abs() < 1e-6, "{}", e.ci_high);
    }
}
