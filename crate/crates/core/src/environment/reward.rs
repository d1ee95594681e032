use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{Metric, Point};

/// Which expected-reward function a [`RewardModel`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RewardKind {
    Triangle,
    Sine,
    TwoDim,
    Custom,
}

type MeanFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Expected-reward function together with its natural metric and known optimum.
///
/// The built-in functions are clamped to `[0, 1]`: the sine and
/// two-dimensional formulas dip below zero near the far corners of the cube,
/// and Bernoulli rewards need a valid success probability.
#[derive(Clone)]
pub struct RewardModel {
    kind: RewardKind,
    metric: Metric,
    mean: MeanFn,
    lipschitz_constant: f64,
    mu_star: f64,
    x_star: Point,
}

impl fmt::Debug for RewardModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewardModel")
            .field("kind", &self.kind)
            .field("metric", &self.metric)
            .field("lipschitz_constant", &self.lipschitz_constant)
            .field("mu_star", &self.mu_star)
            .field("x_star", &self.x_star)
            .finish()
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl RewardModel {
    /// `0.9 - 0.95 |x - 1/3|` on `([0,1], |.|)`.
    pub fn triangle() -> Self {
        Self::builtin(
            RewardKind::Triangle,
            Metric::absolute_value(),
            Arc::new(|x: &[f64]| 0.9 - 0.95 * (x[0] - 1.0 / 3.0).abs()),
            0.95,
            vec![1.0 / 3.0],
        )
    }

    /// `0.35 sin(3 pi x / 2)` on `([0,1], |.|)`, clamped at zero.
    pub fn sine() -> Self {
        Self::builtin(
            RewardKind::Sine,
            Metric::absolute_value(),
            Arc::new(|x: &[f64]| (0.35 * (1.5 * PI * x[0]).sin()).clamp(0.0, 1.0)),
            0.35 * 1.5 * PI,
            vec![1.0 / 3.0],
        )
    }

    /// `1.2 - 0.95 ||x - (0.8, 0.7)||_2 - 0.3 ||x - (0, 1)||_2` on
    /// `([0,1]^2, ||.||_inf)`, clamped at zero.
    pub fn two_dim() -> Self {
        Self::builtin(
            RewardKind::TwoDim,
            Metric::l_infinity(2).expect("dimension 2 is valid"),
            Arc::new(|x: &[f64]| {
                (1.2 - 0.95 * euclid(x, &[0.8, 0.7]) - 0.3 * euclid(x, &[0.0, 1.0])).clamp(0.0, 1.0)
            }),
            // ||v||_2 <= sqrt(2) ||v||_inf
            1.25 * 2f64.sqrt(),
            vec![0.8, 0.7],
        )
    }

    fn builtin(
        kind: RewardKind,
        metric: Metric,
        mean: MeanFn,
        lipschitz_constant: f64,
        x_star: Vec<f64>,
    ) -> Self {
        let x_star = Point::new(x_star).expect("optimizer lies in the cube");
        let mu_star = mean(x_star.coords());
        Self {
            kind,
            metric,
            mean,
            lipschitz_constant,
            mu_star,
            x_star,
        }
    }

    /// User-supplied mean function with a known maximiser.
    pub fn custom(
        metric: Metric,
        mean: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        lipschitz_constant: f64,
        x_star: Point,
    ) -> Result<Self> {
        metric.check(&x_star)?;
        if !(lipschitz_constant >= 0.0) {
            return Err(Error::Config(
                "Lipschitz constant must be nonnegative".into(),
            ));
        }
        let mean: MeanFn = Arc::new(mean);
        let mu_star = mean(x_star.coords());
        Ok(Self {
            kind: RewardKind::Custom,
            metric,
            mean,
            lipschitz_constant,
            mu_star,
            x_star,
        })
    }

    pub fn kind(&self) -> RewardKind {
        self.kind
    }

    /// Metric the function is defined over.
    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dimension(&self) -> usize {
        self.metric.dimension()
    }

    pub fn lipschitz_constant(&self) -> f64 {
        self.lipschitz_constant
    }

    pub fn mu_star(&self) -> f64 {
        self.mu_star
    }

    pub fn x_star(&self) -> &Point {
        &self.x_star
    }

    /// Expected reward at `x`.
    pub fn mu(&self, x: &Point) -> f64 {
        (self.mean)(x.coords())
    }

    /// Optimality gap `mu* - mu(x)`, never negative.
    pub fn gap(&self, x: &Point) -> f64 {
        (self.mu_star - self.mu(x)).max(0.0)
    }
}
