//! Arm spaces on the unit cube `[0,1]^d`.
//!
//! Three metrics are supported: absolute value on the unit interval, the
//! sup-norm, and the Euclidean norm rescaled by `1/sqrt(d)` so that every
//! space has diameter 1. Balls are closed.
//!
//! Maximal packings are built by a greedy sweep over a fixed lattice in
//! row-major order (axis 0 slowest). A lattice candidate is accepted iff it
//! lies inside the region and sits at distance `>= eps` from every point
//! accepted before it. With lattice spacing `<= eps/4` every in-region
//! candidate ends up within `eps` of the packing.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Which norm a [`Metric`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    /// `|x - y|` on `[0,1]`.
    AbsoluteValue,
    /// `max_i |x_i - y_i|`.
    LInfinity,
    /// `||x - y||_2 / sqrt(d)`.
    L2,
}

/// A metric on `[0,1]^d` with diameter at most 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric {
    kind: MetricKind,
    dimension: usize,
}

impl Metric {
    pub fn new(kind: MetricKind, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Config("metric dimension must be positive".into()));
        }
        if kind == MetricKind::AbsoluteValue && dimension != 1 {
            return Err(Error::Config(format!(
                "absolute-value metric is one-dimensional, got dimension {dimension}"
            )));
        }
        Ok(Self { kind, dimension })
    }

    pub fn absolute_value() -> Self {
        Self {
            kind: MetricKind::AbsoluteValue,
            dimension: 1,
        }
    }

    pub fn l_infinity(dimension: usize) -> Result<Self> {
        Self::new(MetricKind::LInfinity, dimension)
    }

    pub fn l2(dimension: usize) -> Result<Self> {
        Self::new(MetricKind::L2, dimension)
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn diameter(&self) -> f64 {
        1.0
    }

    /// Distance between two points of this metric's dimension.
    pub fn distance(&self, a: &Point, b: &Point) -> Result<f64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.dist(a.coords(), b.coords()))
    }

    pub(crate) fn check(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: p.dim(),
            });
        }
        Ok(())
    }

    /// Unchecked distance on raw coordinates.
    pub(crate) fn dist(&self, a: &[f64], b: &[f64]) -> f64 {
        match self.kind {
            MetricKind::AbsoluteValue => (a[0] - b[0]).abs(),
            MetricKind::LInfinity => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
            MetricKind::L2 => {
                let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (sq / self.dimension as f64).sqrt()
            }
        }
    }

    /// Largest per-axis coordinate gap between two points at distance `<= r`.
    pub(crate) fn axis_reach(&self, r: f64) -> f64 {
        match self.kind {
            MetricKind::AbsoluteValue | MetricKind::LInfinity => r,
            MetricKind::L2 => r * (self.dimension as f64).sqrt(),
        }
    }
}

/// An arm: a coordinate vector in `[0,1]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Config(
                "a point needs at least one coordinate".into(),
            ));
        }
        for (axis, &value) in coords.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::PointOutOfRange { axis, value });
            }
        }
        Ok(Self(coords))
    }

    /// One-dimensional point.
    pub fn scalar(x: f64) -> Result<Self> {
        Self::new(vec![x])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Union of closed balls sharing one radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveRegion {
    centers: Vec<Point>,
    radius: f64,
}

impl ActiveRegion {
    pub fn new(centers: Vec<Point>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Config(format!(
                "region radius must be positive, got {radius}"
            )));
        }
        if let Some(first) = centers.first() {
            let d = first.dim();
            if let Some(bad) = centers.iter().find(|c| c.dim() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: bad.dim(),
                });
            }
        }
        Ok(Self { centers, radius })
    }

    /// The whole cube as one ball of radius equal to the diameter.
    pub fn whole_space(dimension: usize) -> Self {
        Self {
            centers: vec![Point(vec![0.0; dimension])],
            radius: 1.0,
        }
    }

    pub fn centers(&self) -> &[Point] {
        &self.centers
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn contains(&self, metric: &Metric, p: &Point) -> bool {
        self.centers
            .iter()
            .any(|c| metric.dist(c.coords(), p.coords()) <= self.radius)
    }
}

/// Regular lattice `{0, 1/n, ..., 1}^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    dimension: usize,
    per_axis: u64,
}

impl Lattice {
    pub fn new(dimension: usize, per_axis: u64) -> Result<Self> {
        if dimension == 0 || per_axis == 0 {
            return Err(Error::Config(
                "lattice needs positive dimension and resolution".into(),
            ));
        }
        Ok(Self {
            dimension,
            per_axis,
        })
    }

    /// Finest power-of-two lattice no coarser than `eps / refinement`.
    pub fn for_packing(dimension: usize, eps: f64, refinement: u32) -> Result<Self> {
        if !(eps > 0.0) || refinement == 0 {
            return Err(Error::Config("packing lattice needs eps > 0".into()));
        }
        let needed = (refinement as f64 / eps).ceil().max(1.0);
        if needed > (1u64 << 52) as f64 {
            return Err(Error::Config(format!(
                "packing radius {eps} is below lattice precision"
            )));
        }
        let per_axis = (needed as u64).next_power_of_two();
        Self::new(dimension, per_axis)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn per_axis(&self) -> u64 {
        self.per_axis
    }

    pub fn spacing(&self) -> f64 {
        1.0 / self.per_axis as f64
    }

    /// Number of lattice points, if it fits in memory-addressable range.
    pub fn len(&self) -> usize {
        ((self.per_axis + 1) as usize).pow(self.dimension as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coord(&self, k: u64) -> f64 {
        k as f64 / self.per_axis as f64
    }

    /// Point at a flat row-major index.
    pub fn point(&self, index: usize) -> Point {
        let side = (self.per_axis + 1) as usize;
        let mut coords = vec![0.0; self.dimension];
        let mut rest = index;
        for axis in (0..self.dimension).rev() {
            coords[axis] = self.coord((rest % side) as u64);
            rest /= side;
        }
        Point(coords)
    }

    fn flat_index(&self, multi: &[u64]) -> usize {
        let side = (self.per_axis + 1) as usize;
        multi.iter().fold(0usize, |acc, &k| acc * side + k as usize)
    }

    /// All points in row-major order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Inclusive index ranges of lattice coordinates inside `[lo, hi]` per axis.
    fn box_ranges(&self, lo: &[f64], hi: &[f64]) -> Option<Vec<(u64, u64)>> {
        let n = self.per_axis as f64;
        lo.iter()
            .zip(hi)
            .map(|(&l, &h)| {
                let a = (l.max(0.0) * n).floor().max(0.0) as u64;
                let b = ((h.min(1.0) * n).ceil() as u64).min(self.per_axis);
                (a <= b && l <= 1.0 && h >= 0.0).then_some((a, b))
            })
            .collect()
    }

    /// Calls `f(index, distance)` for every lattice point in the bounding box
    /// of the ball of `radius` around `center`, row-major.
    pub(crate) fn visit_ball(
        &self,
        metric: &Metric,
        center: &[f64],
        radius: f64,
        mut f: impl FnMut(usize, f64),
    ) {
        let reach = metric.axis_reach(radius);
        let lo: Vec<f64> = center.iter().map(|c| c - reach).collect();
        let hi: Vec<f64> = center.iter().map(|c| c + reach).collect();
        let mut coords = vec![0.0; self.dimension];
        for multi in self.box_indices(&lo, &hi) {
            for (c, &k) in coords.iter_mut().zip(&multi) {
                *c = self.coord(k);
            }
            f(self.flat_index(&multi), metric.dist(center, &coords));
        }
    }

    /// Multi-indices inside an axis-aligned box, row-major.
    fn box_indices(&self, lo: &[f64], hi: &[f64]) -> BoxIndices {
        BoxIndices::new(self.box_ranges(lo, hi))
    }
}

struct BoxIndices {
    ranges: Vec<(u64, u64)>,
    current: Vec<u64>,
    done: bool,
}

impl BoxIndices {
    fn new(ranges: Option<Vec<(u64, u64)>>) -> Self {
        match ranges {
            Some(ranges) => {
                let current = ranges.iter().map(|r| r.0).collect();
                Self {
                    ranges,
                    current,
                    done: false,
                }
            }
            None => Self {
                ranges: Vec::new(),
                current: Vec::new(),
                done: true,
            },
        }
    }
}

impl Iterator for BoxIndices {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut axis = self.ranges.len();
        loop {
            if axis == 0 {
                self.done = true;
                break;
            }
            axis -= 1;
            if self.current[axis] < self.ranges[axis].1 {
                self.current[axis] += 1;
                break;
            }
            self.current[axis] = self.ranges[axis].0;
        }
        Some(out)
    }
}

/// Bucketed point set for radius queries.
struct SpatialHash {
    cell: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
    points: Vec<Vec<f64>>,
}

impl SpatialHash {
    fn new(cell: f64) -> Self {
        Self {
            cell: cell.max(1e-12),
            buckets: HashMap::new(),
            points: Vec::new(),
        }
    }

    fn key(&self, p: &[f64]) -> Vec<i64> {
        p.iter().map(|c| (c / self.cell).floor() as i64).collect()
    }

    fn insert(&mut self, p: Vec<f64>) {
        let key = self.key(&p);
        self.buckets.entry(key).or_default().push(self.points.len());
        self.points.push(p);
    }

    /// Calls `f` on every stored point whose cell neighbours `p`'s cell.
    fn any_near(&self, p: &[f64], mut f: impl FnMut(&[f64]) -> bool) -> bool {
        let base = self.key(p);
        let d = base.len();
        let mut offset = vec![-1i64; d];
        loop {
            let key: Vec<i64> = base.iter().zip(&offset).map(|(b, o)| b + o).collect();
            if let Some(ids) = self.buckets.get(&key) {
                if ids.iter().any(|&i| f(&self.points[i])) {
                    return true;
                }
            }
            let mut axis = 0;
            loop {
                if axis == d {
                    return false;
                }
                if offset[axis] < 1 {
                    offset[axis] += 1;
                    break;
                }
                offset[axis] = -1;
                axis += 1;
            }
        }
    }
}

fn check_dims(metric: &Metric, lattice: &Lattice, region: &ActiveRegion) -> Result<()> {
    if lattice.dimension() != metric.dimension() {
        return Err(Error::DimensionMismatch {
            expected: metric.dimension(),
            got: lattice.dimension(),
        });
    }
    for c in region.centers() {
        metric.check(c)?;
    }
    Ok(())
}

/// Greedy maximal `eps`-packing of `region` over the candidate lattice.
///
/// Returned points lie in the region and are pairwise at distance `>= eps`.
/// Every lattice candidate inside the region is within `eps` of a returned
/// point. The lattice spacing must be at most `eps / 4`.
pub fn maximal_packing(
    region: &ActiveRegion,
    metric: &Metric,
    eps: f64,
    lattice: &Lattice,
) -> Result<Vec<Point>> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Config(format!(
            "packing radius must be positive, got {eps}"
        )));
    }
    check_dims(metric, lattice, region)?;
    if 4.0 * lattice.spacing() > eps * (1.0 + 1e-12) {
        return Err(Error::Config(format!(
            "lattice spacing {} is coarser than eps/4 = {}",
            lattice.spacing(),
            eps / 4.0
        )));
    }
    if region.is_empty() {
        return Ok(Vec::new());
    }

    let d = metric.dimension();
    let radius = region.radius();
    let reach = metric.axis_reach(radius);
    let mut centers = SpatialHash::new(reach);
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for c in region.centers() {
        for (axis, &x) in c.coords().iter().enumerate() {
            lo[axis] = lo[axis].min(x - reach);
            hi[axis] = hi[axis].max(x + reach);
        }
        centers.insert(c.coords().to_vec());
    }

    let mut accepted = SpatialHash::new(metric.axis_reach(eps));
    let mut packing = Vec::new();
    let mut coords = vec![0.0; d];
    for multi in lattice.box_indices(&lo, &hi) {
        for (c, &k) in coords.iter_mut().zip(&multi) {
            *c = lattice.coord(k);
        }
        let inside = centers.any_near(&coords, |c| metric.dist(c, &coords) <= radius);
        if !inside {
            continue;
        }
        let blocked = accepted.any_near(&coords, |p| metric.dist(p, &coords) < eps);
        if !blocked {
            accepted.insert(coords.clone());
            packing.push(Point(coords.clone()));
        }
    }

    #[cfg(debug_assertions)]
    for multi in lattice.box_indices(&lo, &hi) {
        let p: Vec<f64> = multi.iter().map(|&k| lattice.coord(k)).collect();
        if centers.any_near(&p, |c| metric.dist(c, &p) <= radius) {
            debug_assert!(
                accepted.any_near(&p, |q| metric.dist(q, &p) <= eps),
                "lattice candidate {p:?} not covered by the packing"
            );
        }
    }

    Ok(packing)
}

/// True iff some `(x, r)` in `active` has `distance(x, y) <= r`.
pub fn is_covered(y: &Point, active: &[(Point, f64)], metric: &Metric) -> bool {
    active
        .iter()
        .any(|(x, r)| metric.dist(x.coords(), y.coords()) <= *r)
}

/// Incremental coverage bookkeeping over a candidate lattice.
///
/// Tracks how many balls cover each lattice point so the first uncovered
/// candidate (row-major) is available without rescanning every arm.
#[derive(Debug, Clone)]
pub struct CoverageIndex {
    lattice: Lattice,
    metric: Metric,
    counts: Vec<u32>,
    uncovered: BTreeSet<usize>,
}

impl CoverageIndex {
    pub fn new(lattice: Lattice, metric: Metric) -> Result<Self> {
        if lattice.dimension() != metric.dimension() {
            return Err(Error::DimensionMismatch {
                expected: metric.dimension(),
                got: lattice.dimension(),
            });
        }
        let n = lattice.len();
        Ok(Self {
            lattice,
            metric,
            counts: vec![0; n],
            uncovered: (0..n).collect(),
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Applies `f` to every lattice index whose distance to `center` satisfies `keep`.
    fn for_each_in(
        &self,
        center: &Point,
        reach_radius: f64,
        keep: impl Fn(f64) -> bool,
        mut f: impl FnMut(usize),
    ) {
        self.lattice
            .visit_ball(&self.metric, center.coords(), reach_radius, |i, d| {
                if keep(d) {
                    f(i)
                }
            });
    }

    /// Registers a new closed ball.
    pub fn add_ball(&mut self, center: &Point, radius: f64) {
        let mut hits = Vec::new();
        self.for_each_in(center, radius, |d| d <= radius, |i| hits.push(i));
        for i in hits {
            if self.counts[i] == 0 {
                self.uncovered.remove(&i);
            }
            self.counts[i] += 1;
        }
    }

    /// Shrinks an existing ball from `old` to `new` radius.
    pub fn shrink_ball(&mut self, center: &Point, old: f64, new: f64) {
        if new >= old {
            return;
        }
        let mut hits = Vec::new();
        self.for_each_in(center, old, |d| d <= old && d > new, |i| hits.push(i));
        for i in hits {
            self.counts[i] -= 1;
            if self.counts[i] == 0 {
                self.uncovered.insert(i);
            }
        }
    }

    /// First uncovered lattice point in row-major order.
    pub fn first_uncovered(&self) -> Option<Point> {
        self.uncovered.first().map(|&i| self.lattice.point(i))
    }

    pub fn uncovered_count(&self) -> usize {
        self.uncovered.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64) -> Point {
        Point::scalar(x).unwrap()
    }

    fn p2(x: f64, y: f64) -> Point {
        Point::new(vec![x, y]).unwrap()
    }

    #[test]
    fn distance_examples() {
        let abs = Metric::absolute_value();
        assert!((abs.distance(&p(0.2), &p(0.7)).unwrap() - 0.5).abs() < 1e-15);
        let linf = Metric::l_infinity(2).unwrap();
        assert_eq!(linf.distance(&p2(0.0, 0.0), &p2(1.0, 1.0)).unwrap(), 1.0);
        let l2 = Metric::l2(2).unwrap();
        // sqrt(2) / sqrt(2)
        assert_eq!(l2.distance(&p2(0.0, 0.0), &p2(1.0, 1.0)).unwrap(), 1.0);
    }

    #[test]
    fn distance_rejects_dimension_mismatch() {
        let linf = Metric::l_infinity(2).unwrap();
        let err = linf.distance(&p(0.1), &p2(0.0, 0.0)).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        ));
    }

    #[test]
    fn point_rejects_out_of_range() {
        assert!(Point::new(vec![0.5, 1.0 + 1e-12]).is_err());
        assert!(Point::scalar(-0.0).is_ok());
        assert!(Point::scalar(f64::NAN).is_err());
    }

    #[test]
    fn absolute_metric_is_one_dimensional() {
        assert!(Metric::new(MetricKind::AbsoluteValue, 2).is_err());
    }

    #[test]
    fn packing_unit_interval_eps_one() {
        let lattice = Lattice::new(1, 8).unwrap();
        let out = maximal_packing(
            &ActiveRegion::whole_space(1),
            &Metric::absolute_value(),
            1.0,
            &lattice,
        )
        .unwrap();
        assert_eq!(out, vec![p(0.0), p(1.0)]);
    }

    #[test]
    fn packing_unit_interval_eps_half() {
        let lattice = Lattice::new(1, 16).unwrap();
        let out = maximal_packing(
            &ActiveRegion::whole_space(1),
            &Metric::absolute_value(),
            0.5,
            &lattice,
        )
        .unwrap();
        assert_eq!(out, vec![p(0.0), p(0.5), p(1.0)]);
    }

    #[test]
    fn packing_of_single_ball_keeps_both_closed_endpoints() {
        // B(0.5, 0.25) is closed, so 0.25 and 0.75 are both members and sit
        // exactly eps apart.
        let region = ActiveRegion::new(vec![p(0.5)], 0.25).unwrap();
        let lattice = Lattice::new(1, 8).unwrap();
        let out = maximal_packing(&region, &Metric::absolute_value(), 0.5, &lattice).unwrap();
        assert_eq!(out, vec![p(0.25), p(0.75)]);
        // Brute force over the lattice: no further member can be added.
        for q in lattice.points() {
            if region.contains(&Metric::absolute_value(), &q) {
                assert!(out
                    .iter()
                    .any(|o| (o.coords()[0] - q.coords()[0]).abs() < 0.5 + 1e-15));
            }
        }
    }

    #[test]
    fn packing_rejects_coarse_lattice() {
        let lattice = Lattice::new(1, 4).unwrap();
        let err = maximal_packing(
            &ActiveRegion::whole_space(1),
            &Metric::absolute_value(),
            0.5,
            &lattice,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn packing_of_empty_region_is_empty() {
        let region = ActiveRegion::new(vec![], 0.5).unwrap();
        let lattice = Lattice::new(1, 8).unwrap();
        let out = maximal_packing(&region, &Metric::absolute_value(), 0.5, &lattice).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn packing_is_deterministic() {
        let metric = Metric::l2(2).unwrap();
        let region = ActiveRegion::new(vec![p2(0.3, 0.6), p2(0.7, 0.2)], 0.2).unwrap();
        let lattice = Lattice::for_packing(2, 0.0625, 4).unwrap();
        let a = maximal_packing(&region, &metric, 0.0625, &lattice).unwrap();
        let b = maximal_packing(&region, &metric, 0.0625, &lattice).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn packing_cardinality_grows_as_eps_shrinks() {
        for metric in [
            Metric::absolute_value(),
            Metric::l_infinity(2).unwrap(),
            Metric::l2(2).unwrap(),
        ] {
            let d = metric.dimension();
            let mut last = 0;
            for eps in [1.0, 0.5, 0.25] {
                let lattice = Lattice::for_packing(d, eps, 4).unwrap();
                let n = maximal_packing(&ActiveRegion::whole_space(d), &metric, eps, &lattice)
                    .unwrap()
                    .len();
                assert!(n >= last, "{metric:?} eps={eps}: {n} < {last}");
                last = n;
            }
        }
    }

    #[test]
    fn covered_examples() {
        let metric = Metric::absolute_value();
        let active = vec![(p(0.25), 0.1)];
        assert!(is_covered(&p(0.3), &active, &metric));
        assert!(!is_covered(&p(0.5), &active, &metric));
        assert!(is_covered(&p(0.35), &active, &metric));
        // Boundary with exactly representable values: closed ball.
        let active = vec![(p(0.25), 0.125)];
        assert!(is_covered(&p(0.375), &active, &metric));
    }

    #[test]
    fn coverage_index_tracks_shrinking_balls() {
        let metric = Metric::absolute_value();
        let lattice = Lattice::new(1, 8).unwrap();
        let mut idx = CoverageIndex::new(lattice, metric).unwrap();
        assert_eq!(idx.first_uncovered(), Some(p(0.0)));
        idx.add_ball(&p(0.0), 1.0);
        assert_eq!(idx.first_uncovered(), None);
        idx.shrink_ball(&p(0.0), 1.0, 0.5);
        assert_eq!(idx.first_uncovered(), Some(p(0.625)));
        idx.add_ball(&p(0.625), 1.0);
        idx.shrink_ball(&p(0.625), 1.0, 0.125);
        assert_eq!(idx.first_uncovered(), Some(p(0.875)));
        assert_eq!(idx.uncovered_count(), 2);
    }

    #[test]
    fn lattice_order_is_row_major() {
        let lattice = Lattice::new(2, 2).unwrap();
        let pts: Vec<Point> = lattice.points().take(4).collect();
        assert_eq!(
            pts,
            vec![p2(0.0, 0.0), p2(0.0, 0.5), p2(0.0, 1.0), p2(0.5, 0.0)]
        );
    }
}
