use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{NoiseModel, QmcContract, RewardModel, RoundLedger};
use crate::error::{Error, Result};
use crate::geometry::Point;

/// How the oracle produces its estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Simulates the accuracy contract directly: the estimate is within
    /// `eps` of the mean except for an injected failure with probability `delta`.
    Contract,
    /// Averages `queries_used` classical draws. Carries no accuracy guarantee
    /// at the QMC budget; useful as a baseline.
    EmpiricalMean,
}

/// Result of one oracle invocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmcEstimate {
    pub estimate: f64,
    pub queries_used: u64,
    /// The horizon cut the call short; the estimate carries no guarantee.
    pub horizon_exhausted: bool,
    /// A contract failure was injected into this estimate.
    pub faulted: bool,
}

// Keeps |estimate - mu| <= eps after floating-point rounding.
const INSIDE: f64 = 1.0 - 1.0 / (1u64 << 40) as f64;

/// Simulated quantum Monte Carlo mean estimator for one run.
#[derive(Debug, Clone)]
pub struct QuantumOracleSim {
    mode: OracleMode,
    contract: QmcContract,
    fault_injection: bool,
    rng: ChaCha8Rng,
}

impl QuantumOracleSim {
    pub fn new(
        mode: OracleMode,
        contract: QmcContract,
        fault_injection: bool,
        rng: ChaCha8Rng,
    ) -> Self {
        Self {
            mode,
            contract,
            fault_injection,
            rng,
        }
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    pub fn contract(&self) -> QmcContract {
        self.contract
    }

    pub fn fault_injection(&self) -> bool {
        self.fault_injection
    }

    /// Runs the estimator at accuracy `eps` and failure probability `delta`,
    /// charging every query to `ledger` at the gap of `x`.
    ///
    /// Returns [`Error::HorizonExhausted`] without consuming anything if the
    /// ledger has no rounds left.
    pub fn estimate(
        &mut self,
        model: &RewardModel,
        noise: &NoiseModel,
        x: &Point,
        eps: f64,
        delta: f64,
        ledger: &mut RoundLedger,
    ) -> Result<QmcEstimate> {
        if ledger.is_exhausted() {
            return Err(Error::HorizonExhausted);
        }
        let budget = self.contract.budget(eps, delta)?;
        let mean = model.mu(x);
        let queries_used = ledger.charge(budget, model.gap(x));
        let horizon_exhausted = queries_used < budget;

        let (estimate, faulted) = match self.mode {
            OracleMode::Contract => {
                if self.fault_injection && self.rng.gen_bool(delta) {
                    let sign = if self.rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    (mean + sign * 2.0 * eps, true)
                } else {
                    let u: f64 = self.rng.gen_range(-1.0..1.0) * INSIDE;
                    (mean + u * eps, false)
                }
            }
            OracleMode::EmpiricalMean => {
                let sum: f64 = (0..queries_used)
                    .map(|_| noise.sample(mean, &mut self.rng))
                    .sum();
                (sum / queries_used as f64, false)
            }
        };

        Ok(QmcEstimate {
            estimate,
            queries_used,
            horizon_exhausted,
            faulted,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::run_rng;
    use crate::geometry::Metric;

    fn half() -> RewardModel {
        RewardModel::custom(
            Metric::absolute_value(),
            |_| 0.5,
            0.0,
            Point::scalar(0.0).unwrap(),
        )
        .unwrap()
    }

    fn oracle(fault: bool, seed: u64) -> QuantumOracleSim {
        QuantumOracleSim::new(
            OracleMode::Contract,
            QmcContract::Bounded { c1: 2.0 },
            fault,
            run_rng(seed),
        )
    }

    #[test]
    fn contract_without_faults_is_always_accurate() {
        let model = half();
        let x = Point::scalar(0.3).unwrap();
        let mut o = oracle(false, 11);
        let mut ledger = RoundLedger::new(u64::MAX, 1 << 40);
        for _ in 0..10_000 {
            let e = o
                .estimate(&model, &NoiseModel::Bernoulli, &x, 0.1, 0.05, &mut ledger)
                .unwrap();
            assert!((0.4..=0.6).contains(&e.estimate));
            assert!((e.estimate - 0.5).abs() <= 0.1);
        }
    }

    #[test]
    fn contract_with_faults_respects_delta() {
        // Binomial(10^4, 0.95): mean 9500, sd ~21.8; 9400 is ~4.6 sd below.
        let model = half();
        let x = Point::scalar(0.3).unwrap();
        let mut o = oracle(true, 12);
        let mut ledger = RoundLedger::new(u64::MAX, 1 << 40);
        let mut inside = 0;
        for _ in 0..10_000 {
            let e = o
                .estimate(&model, &NoiseModel::Bernoulli, &x, 0.1, 0.05, &mut ledger)
                .unwrap();
            if (e.estimate - 0.5).abs() <= 0.1 {
                inside += 1;
            } else {
                assert!(e.faulted);
            }
        }
        assert!(inside >= 9_400, "{inside}");
    }

    #[test]
    fn truncated_by_horizon() {
        let model = RewardModel::triangle();
        let x = Point::scalar(0.0).unwrap();
        let mut o = oracle(false, 13);
        let mut ledger = RoundLedger::new(5, 1);
        // budget at eps = 0.5, delta = 5e-5 is 40
        let e = o
            .estimate(
                &model,
                &NoiseModel::Bernoulli,
                &x,
                0.5,
                0.05 / 1000.0,
                &mut ledger,
            )
            .unwrap();
        assert_eq!(e.queries_used, 5);
        assert!(e.horizon_exhausted);
        assert_eq!(ledger.consumed(), 5);
        let err = o
            .estimate(&model, &NoiseModel::Bernoulli, &x, 0.5, 0.05, &mut ledger)
            .unwrap_err();
        assert!(matches!(err, Error::HorizonExhausted));
        assert_eq!(ledger.consumed(), 5);
    }

    #[test]
    fn accounting_is_exact() {
        let model = RewardModel::triangle();
        let mut o = oracle(true, 14);
        let mut ledger = RoundLedger::new(1_000_000, 1000);
        let mut queries = 0;
        let mut regret = 0.0;
        for i in 0..200 {
            let x = Point::scalar(i as f64 / 200.0).unwrap();
            let eps = 1.0 / (1 + i % 7) as f64;
            let e = o
                .estimate(&model, &NoiseModel::Bernoulli, &x, eps, 0.01, &mut ledger)
                .unwrap();
            queries += e.queries_used;
            regret += e.queries_used as f64 * model.gap(&x);
        }
        assert_eq!(queries, ledger.consumed());
        assert!((regret - ledger.cumulative_regret()).abs() <= 1e-9 * 1_000_000.0);
    }

    #[test]
    fn empirical_mean_averages_draws() {
        let model = half();
        let x = Point::scalar(0.3).unwrap();
        let mut o = QuantumOracleSim::new(
            OracleMode::EmpiricalMean,
            QmcContract::Bounded { c1: 2.0 },
            false,
            run_rng(15),
        );
        let mut ledger = RoundLedger::new(u64::MAX, 1 << 40);
        let e = o
            .estimate(&model, &NoiseModel::Bernoulli, &x, 0.01, 0.01, &mut ledger)
            .unwrap();
        assert_eq!(e.queries_used, 922);
        // every draw is 0 or 1, so the mean is a multiple of 1/922
        assert!((e.estimate * 922.0 - (e.estimate * 922.0).round()).abs() < 1e-9);
    }
}
