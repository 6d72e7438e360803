//! Parameters on the unit circle 𝕊 = ℝ/ℤ.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of 𝕊 = ℝ/ℤ stored by its canonical representative in `[0, 1)`.
///
/// Closed curves are parameterized over 𝕊, so all parameter arithmetic
/// wraps modulo 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CircleParam(f64);

impl CircleParam {
    /// Wraps `t` into `[0, 1)`.
    ///
    /// Values extremely close to 1 from below collapse to 0 so that the
    /// canonical representative is stable under round-trips through ℝ.
    pub fn new(t: f64) -> Self {
        debug_assert!(t.is_finite(), "circle parameter must be finite");
        let mut u = t - t.floor();
        if u >= 1.0 {
            // t.floor() can round such that u == 1.0 for t just below an integer
            u = 0.0;
        }
        CircleParam(u)
    }

    /// Canonical representative in `[0, 1)`.
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Circle distance `min(|a-b|, 1-|a-b|)`, a metric on 𝕊 with values in `[0, 1/2]`.
    pub fn dist(self, other: CircleParam) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(1.0 - d)
    }

    /// Shift by `dt` (any real), wrapping.
    pub fn shift(self, dt: f64) -> CircleParam {
        CircleParam::new(self.0 + dt)
    }

    /// Signed circular difference `self - other` taken in `(-1/2, 1/2]`.
    pub fn signed_diff(self, other: CircleParam) -> f64 {
        let mut d = self.0 - other.0;
        if d > 0.5 {
            d -= 1.0;
        } else if d <= -0.5 {
            d += 1.0;
        }
        d
    }
}

impl fmt::Display for CircleParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<f64> for CircleParam {
    fn from(t: f64) -> Self {
        CircleParam::new(t)
    }
}

/// Circle distance between two raw parameters (convenience for loops that
/// stay in `f64`).
pub fn circle_dist(a: f64, b: f64) -> f64 {
    CircleParam::new(a).dist(CircleParam::new(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wraps_into_unit_interval() {
        assert_eq!(CircleParam::new(0.25).value(), 0.25);
        assert_eq!(CircleParam::new(1.25).value(), 0.25);
        assert_eq!(CircleParam::new(-0.75).value(), 0.25);
        assert_eq!(CircleParam::new(3.0).value(), 0.0);
        assert_eq!(CircleParam::new(-1.0).value(), 0.0);
    }

    #[test]
    fn canonical_rep_never_reaches_one() {
        // 1 - 2^-53 wraps cleanly, and a value whose floor-subtraction rounds
        // up to 1.0 collapses to 0.
        let tricky = -1e-18;
        let c = CircleParam::new(tricky);
        assert!(c.value() >= 0.0 && c.value() < 1.0);
    }

    #[test]
    fn distance_is_circle_metric() {
        assert!((circle_dist(0.1, 0.9) - 0.2).abs() < 1e-15);
        assert!((circle_dist(0.0, 0.5) - 0.5).abs() < 1e-15);
        assert_eq!(circle_dist(0.3, 0.3), 0.0);
    }

    #[test]
    fn signed_diff_halves() {
        assert!((CircleParam::new(0.1).signed_diff(CircleParam::new(0.9)) - 0.2).abs() < 1e-15);
        assert!((CircleParam::new(0.9).signed_diff(CircleParam::new(0.1)) + 0.2).abs() < 1e-15);
    }
}
