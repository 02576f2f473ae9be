//! Rate regions spanned by time sharing, and the two operating points the
//! simulator reports.
//!
//! A region is a list of corner points `(r_u, r_v)`; time sharing makes
//! every convex combination achievable. Max sum-rate always sits on a
//! corner. Max-min either sits on a corner or on the mixture of two corners
//! that equalizes the rates; `max_min_two_detailed` solves the two-point
//! problem in closed form and `max_min_oracle` brute-forces it on a grid as
//! an independent reference.

use thiserror::Error;

use crate::{check, ParamError};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RegionError {
    #[error("a rate region needs at least one corner point")]
    Empty,
    #[error("corner {index} has a negative or non-finite coordinate: ({x}, {y})")]
    BadCorner { index: usize, x: f64, y: f64 },
}

/// Corner points of an achievable region.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    points: Vec<(f64, f64)>,
}

impl RateRegion {
    /// Corners must be finite and nonnegative; at least one is required.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, RegionError> {
        if points.is_empty() {
            return Err(RegionError::Empty);
        }
        for (index, &(x, y)) in points.iter().enumerate() {
            if !(x.is_finite() && y.is_finite() && x >= 0.0 && y >= 0.0) {
                return Err(RegionError::BadCorner { index, x, y });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Objective a reported operating point maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    MaxSum,
    MaxMin,
}

/// A point on the time-sharing hull: weight `lambda` on corner `corners.0`,
/// the remainder on `corners.1`. Single-corner optima have equal indices
/// and `lambda = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub r_u: f64,
    pub r_v: f64,
    pub objective: Objective,
    pub corners: (usize, usize),
    pub lambda: f64,
}

impl OperatingPoint {
    pub fn sum(&self) -> f64 {
        self.r_u + self.r_v
    }

    pub fn min_rate(&self) -> f64 {
        self.r_u.min(self.r_v)
    }
}

/// Best corner by sum rate. Time sharing never helps a linear objective;
/// ties go to the larger `r_u`, then the larger `r_v`.
pub fn max_sum_rate(region: &RateRegion) -> OperatingPoint {
    let pts = region.points();
    let mut best = 0;
    for (i, &(x, y)) in pts.iter().enumerate().skip(1) {
        let (bx, by) = pts[best];
        if x + y > bx + by || (x + y == bx + by && (x > bx || (x == bx && y > by))) {
            best = i;
        }
    }
    let (r_u, r_v) = pts[best];
    OperatingPoint { r_u, r_v, objective: Objective::MaxSum, corners: (best, best), lambda: 1.0 }
}

/// Branch taken by the two-point max-min solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxMinCase {
    /// One point is at least as good in both coordinates: use it alone.
    Dominance,
    /// Both points sit on the same side of the `r_u = r_v` diagonal: the
    /// better corner alone beats every mixture.
    SameSide,
    /// The segment crosses the diagonal: the equalizing mixture wins.
    Crossing,
}

/// Two-point max-min solution: the value, the winning weight on the first
/// point, and the branch taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxMinTwo {
    pub value: f64,
    pub lambda: f64,
    pub case: MaxMinCase,
}

/// Max-min rate over time sharing between two points.
pub fn max_min_two(p1: (f64, f64), p2: (f64, f64)) -> f64 {
    max_min_two_detailed(p1, p2).value
}

/// Closed-form two-point max-min.
///
/// With `d = (x1-x2)(y1-y2)` and `s = (x1-y1)(x2-y2)`: `d >= 0` is the
/// dominance branch (a shared coordinate lands here too, where the same
/// formula still holds), `d < 0, s >= 0` the same-side branch, and
/// `d < 0, s < 0` the crossing branch. In the crossing branch the
/// denominator `x1-x2+y2-y1` cannot vanish: its two terms share a sign, and
/// either being zero would have routed the pair to an earlier branch.
pub fn max_min_two_detailed((x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> MaxMinTwo {
    let d = (x1 - x2) * (y1 - y2);
    if d >= 0.0 {
        let value = x1.max(x2).min(y1.max(y2));
        let lambda = if x1.min(y1) >= x2.min(y2) { 1.0 } else { 0.0 };
        return MaxMinTwo { value, lambda, case: MaxMinCase::Dominance };
    }
    let s = (x1 - y1) * (x2 - y2);
    if s >= 0.0 {
        let (m1, m2) = (x1.min(y1), x2.min(y2));
        let (value, lambda) = if m1 >= m2 { (m1, 1.0) } else { (m2, 0.0) };
        return MaxMinTwo { value, lambda, case: MaxMinCase::SameSide };
    }
    // grouping the differences keeps the solution bitwise symmetric under
    // swapping the points or the user roles
    let t = (x1 - x2) + (y2 - y1);
    MaxMinTwo { value: (x1 * y2 - y1 * x2) / t, lambda: (y2 - x2) / t, case: MaxMinCase::Crossing }
}

/// Max-min operating point over the whole region: best over all corner
/// pairs, each corner alone included.
pub fn max_min_region(region: &RateRegion) -> OperatingPoint {
    let pts = region.points();
    let mut best = (f64::NEG_INFINITY, 0, 0, 1.0);
    for i in 0..pts.len() {
        for j in i..pts.len() {
            let mm = max_min_two_detailed(pts[i], pts[j]);
            if mm.value > best.0 {
                best = (mm.value, i, j, mm.lambda);
            }
        }
    }
    let (_, i, j, lambda) = best;
    let ((x1, y1), (x2, y2)) = (pts[i], pts[j]);
    OperatingPoint {
        r_u: lambda * x1 + (1.0 - lambda) * x2,
        r_v: lambda * y1 + (1.0 - lambda) * y2,
        objective: Objective::MaxMin,
        corners: (i, j),
        lambda,
    }
}

/// Brute-force max-min: scans an evenly spaced grid of mixtures for every
/// corner pair, both endpoints included. `grid_step` must lie in
/// `(0, 0.01]`. The scan undershoots the true optimum by at most the
/// largest coordinate spread times half the step.
pub fn max_min_oracle(region: &RateRegion, grid_step: f64) -> Result<f64, ParamError> {
    check("grid_step", grid_step, grid_step.is_finite() && grid_step > 0.0 && grid_step <= 0.01)?;
    let pts = region.points();
    let steps = (1.0 / grid_step).ceil() as usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..pts.len() {
        for j in i..pts.len() {
            let ((x1, y1), (x2, y2)) = (pts[i], pts[j]);
            if i == j {
                // every mixture of a corner with itself is that corner
                best = best.max(x1.min(y1));
                continue;
            }
            for k in 0..=steps {
                let lambda = (k as f64 * grid_step).min(1.0);
                let x = lambda * x1 + (1.0 - lambda) * x2;
                let y = lambda * y1 + (1.0 - lambda) * y2;
                best = best.max(x.min(y));
            }
        }
    }
    Ok(best)
}
