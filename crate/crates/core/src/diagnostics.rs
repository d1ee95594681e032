//! Brute-force diagnostics: near-optimal sets, zooming numbers, zooming
//! dimension fits and clean-event audits of recorded runs.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::algorithms::AuditLog;
use crate::environment::RewardModel;
use crate::error::{Error, Result};
use crate::geometry::{Lattice, Metric, Point};

/// Grid points with `r <= gap < 2r`.
pub fn near_optimal_set(model: &RewardModel, r: f64, grid: &Lattice) -> Result<Vec<Point>> {
    check_radius(r)?;
    check_grid(model, grid)?;
    Ok(grid.points().filter(|x| in_band(model.gap(x), r)).collect())
}

fn in_band(gap: f64, r: f64) -> bool {
    r <= gap && gap < 2.0 * r
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("radius must lie in (0, 1], got {r}")))
    }
}

fn check_grid(model: &RewardModel, grid: &Lattice) -> Result<()> {
    if grid.dimension() != model.dimension() {
        return Err(Error::DimensionMismatch {
            expected: model.dimension(),
            got: grid.dimension(),
        });
    }
    Ok(())
}

/// Greedy set-cover count of radius-`r / divisor` balls, centred on grid
/// points, needed to cover the grid part of the near-optimal set at `r`.
///
/// Each step takes the ball covering the most still-uncovered targets; the
/// first centre in row-major order wins ties.
pub fn zooming_number(
    model: &RewardModel,
    metric: &Metric,
    r: f64,
    divisor: f64,
    grid: &Lattice,
) -> Result<usize> {
    check_radius(r)?;
    check_grid(model, grid)?;
    if metric.dimension() != grid.dimension() {
        return Err(Error::DimensionMismatch {
            expected: metric.dimension(),
            got: grid.dimension(),
        });
    }
    if !(divisor > 0.0) {
        return Err(Error::Config(format!(
            "ball radius divisor must be positive, got {divisor}"
        )));
    }
    let rho = r / divisor;

    let n = grid.len();
    let mut uncovered = vec![false; n];
    let mut remaining = 0usize;
    for (i, x) in grid.points().enumerate() {
        if in_band(model.gap(&x), r) {
            uncovered[i] = true;
            remaining += 1;
        }
    }
    if remaining == 0 {
        return Ok(0);
    }

    let count = |center: usize, uncovered: &[bool]| {
        let c = grid.point(center);
        let mut k = 0usize;
        grid.visit_ball(metric, c.coords(), rho, |i, d| {
            if d <= rho && uncovered[i] {
                k += 1;
            }
        });
        k
    };

    // Counts only shrink, so a lazily refreshed max-heap yields the exact
    // greedy choice.
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = (0..n)
        .filter_map(|c| {
            let k = count(c, &uncovered);
            (k > 0).then_some((k, Reverse(c)))
        })
        .collect();

    let mut balls = 0;
    while remaining > 0 {
        let Some((stale, Reverse(c))) = heap.pop() else {
            break;
        };
        let fresh = count(c, &uncovered);
        if fresh == 0 {
            continue;
        }
        if fresh < stale {
            heap.push((fresh, Reverse(c)));
            continue;
        }
        let center = grid.point(c);
        grid.visit_ball(metric, center.coords(), rho, |i, d| {
            if d <= rho && uncovered[i] {
                uncovered[i] = false;
                remaining -= 1;
            }
        });
        balls += 1;
    }
    Ok(balls)
}

/// Zooming numbers over a decreasing radius sequence and the fitted growth
/// exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoomingProfile {
    pub radii: Vec<f64>,
    pub counts: Vec<usize>,
    pub fitted_dimension: f64,
    /// Root-mean-square residual of the log-log fit.
    pub fit_residual: f64,
}

/// Least-squares slope of `ln N` against `ln(1/r)` over nonzero counts.
///
/// Fewer than four usable radii give dimension 0. Negative slopes are
/// clamped to 0.
pub fn fit_zooming_dimension(radii: &[f64], counts: &[usize]) -> Result<ZoomingProfile> {
    if radii.len() != counts.len() {
        return Err(Error::Config(format!(
            "{} radii but {} counts",
            radii.len(),
            counts.len()
        )));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) || radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::Config(
            "radii must be positive and strictly decreasing".into(),
        ));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = radii
        .iter()
        .zip(counts)
        .filter(|(_, &c)| c > 0)
        .map(|(&r, &c)| ((1.0 / r).ln(), (c as f64).ln()))
        .unzip();

    let (slope, residual) = if xs.len() < 4 {
        (0.0, 0.0)
    } else {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let sse: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - intercept - slope * x).powi(2))
            .sum();
        (slope, (sse / n).sqrt())
    };

    Ok(ZoomingProfile {
        radii: radii.to_vec(),
        counts: counts.to_vec(),
        fitted_dimension: slope.max(0.0),
        fit_residual: residual,
    })
}

/// Radii `2^-2, ..., 2^-7`.
pub fn default_profile_radii() -> Vec<f64> {
    (2..=7).map(|k| 0.5f64.powi(k)).collect()
}

/// Default diagnostic grid: 8192 cells per axis in 1-d, 128 in 2-d, 32 above.
pub fn default_profile_grid(dimension: usize) -> Result<Lattice> {
    let per_axis = match dimension {
        1 => 8192,
        2 => 128,
        _ => 32,
    };
    Lattice::new(dimension, per_axis)
}

/// Zooming numbers at each radius and the fitted dimension.
pub fn zooming_profile(
    model: &RewardModel,
    metric: &Metric,
    radii: &[f64],
    divisor: f64,
    grid: &Lattice,
) -> Result<ZoomingProfile> {
    let counts = radii
        .iter()
        .map(|&r| zooming_number(model, metric, r, divisor, grid))
        .collect::<Result<Vec<_>>>()?;
    fit_zooming_dimension(radii, &counts)
}

/// Violation counts of the inequalities recorded in an audit log.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CleanEventReport {
    pub estimates: usize,
    /// Estimates with `|mu_hat - mu| > radius`.
    pub estimate_violations: usize,
    pub gap_checks: usize,
    pub gap_violations: usize,
    pub optimum_checks: usize,
    pub optimum_violations: usize,
    pub activation_checks: usize,
    /// Activations whose arm was already covered or coincided with an active arm.
    pub separation_violations: usize,
}

impl CleanEventReport {
    /// Fraction of estimates violating their radius; `None` for an empty log.
    pub fn violation_fraction(&self) -> Option<f64> {
        (self.estimates > 0).then(|| self.estimate_violations as f64 / self.estimates as f64)
    }

    pub fn is_empty(&self) -> bool {
        self.estimates == 0
            && self.gap_checks == 0
            && self.optimum_checks == 0
            && self.activation_checks == 0
    }

    pub fn total_violations(&self) -> usize {
        self.estimate_violations
            + self.gap_violations
            + self.optimum_violations
            + self.separation_violations
    }

    /// Sums two reports.
    pub fn merge(self, other: Self) -> Self {
        Self {
            estimates: self.estimates + other.estimates,
            estimate_violations: self.estimate_violations + other.estimate_violations,
            gap_checks: self.gap_checks + other.gap_checks,
            gap_violations: self.gap_violations + other.gap_violations,
            optimum_checks: self.optimum_checks + other.optimum_checks,
            optimum_violations: self.optimum_violations + other.optimum_violations,
            activation_checks: self.activation_checks + other.activation_checks,
            separation_violations: self.separation_violations + other.separation_violations,
        }
    }
}

/// Counts every violated inequality in `log`.
pub fn audit_clean_event(log: &AuditLog) -> CleanEventReport {
    let estimate_violations = log
        .estimates
        .iter()
        .filter(|e| (e.estimate - e.mean).abs() > e.radius)
        .count();
    let gap_violations = log
        .gaps
        .iter()
        .filter(|g| g.gap.partial_cmp(&g.bound) == Some(Ordering::Greater))
        .count();
    let optimum_violations = log.optimum.iter().filter(|o| o.nearest > o.radius).count();
    let separation_violations = log.activations.iter().filter(|a| !(a.margin > 0.0)).count();
    CleanEventReport {
        estimates: log.estimates.len(),
        estimate_violations,
        gap_checks: log.gaps.len(),
        gap_violations,
        optimum_checks: log.optimum.len(),
        optimum_violations,
        activation_checks: log.activations.len(),
        separation_violations,
    }
}
