use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::RewardModel;
use crate::geometry::Point;

/// Observation noise around the expected reward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    /// Reward in `{0, 1}` with success probability `mu(x)`.
    Bernoulli,
    /// `mu(x) + N(0, sigma^2)`.
    Gaussian { sigma: f64 },
}

impl NoiseModel {
    pub fn sigma(&self) -> Option<f64> {
        match self {
            NoiseModel::Bernoulli => None,
            NoiseModel::Gaussian { sigma } => Some(*sigma),
        }
    }

    /// One noisy draw around `mean`.
    pub fn sample<R: Rng + ?Sized>(&self, mean: f64, rng: &mut R) -> f64 {
        match *self {
            NoiseModel::Bernoulli => {
                if rng.gen_bool(mean.clamp(0.0, 1.0)) {
                    1.0
                } else {
                    0.0
                }
            }
            NoiseModel::Gaussian { sigma } => {
                let normal = Normal::new(0.0, sigma).expect("sigma is finite and nonnegative");
                mean + normal.sample(rng)
            }
        }
    }
}

/// One classical reward observation `y = mu(x) + eta`.
pub fn classical_sample<R: Rng + ?Sized>(
    model: &RewardModel,
    noise: &NoiseModel,
    x: &Point,
    rng: &mut R,
) -> f64 {
    noise.sample(model.mu(x), rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::run_rng;
    use crate::geometry::Metric;

    fn constant(value: f64) -> RewardModel {
        RewardModel::custom(
            Metric::absolute_value(),
            move |_| value,
            0.0,
            Point::scalar(0.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn degenerate_bernoulli() {
        let mut rng = run_rng(1);
        let m = constant(1.0);
        let x = Point::scalar(0.5).unwrap();
        for _ in 0..1000 {
            assert_eq!(
                classical_sample(&m, &NoiseModel::Bernoulli, &x, &mut rng),
                1.0
            );
        }
    }

    #[test]
    fn bernoulli_mean_concentrates() {
        // Hoeffding: P(|mean - 0.5| > 0.02) <= 2 exp(-2 * 10^4 * 0.02^2) ~ 6.7e-4
        let mut rng = run_rng(2);
        let m = constant(0.5);
        let x = Point::scalar(0.5).unwrap();
        let n = 10_000;
        let sum: f64 = (0..n)
            .map(|_| classical_sample(&m, &NoiseModel::Bernoulli, &x, &mut rng))
            .sum();
        assert!((sum / n as f64 - 0.5).abs() <= 0.02);
    }

    #[test]
    fn gaussian_variance_concentrates() {
        // sample variance sd ~ sigma^2 sqrt(2/n) = 0.1 * 0.01414; 0.01 is ~7 sd
        let mut rng = run_rng(3);
        let m = constant(0.3);
        let x = Point::scalar(0.5).unwrap();
        let noise = NoiseModel::Gaussian {
            sigma: 0.1f64.sqrt(),
        };
        let n = 10_000;
        let draws: Vec<f64> = (0..n)
            .map(|_| classical_sample(&m, &noise, &x, &mut rng))
            .collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((var - 0.1).abs() <= 0.01, "variance {var}");
        assert!((mean - 0.3).abs() <= 0.02, "mean {mean}");
    }
}
