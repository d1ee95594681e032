use rayon::prelude::*;

use super::config::{Algorithm, ExperimentConfig};
use crate::algorithms::{
    run_classical_zooming, run_qlae, run_qlae_bv, run_qzooming, run_qzooming_bv, PackingConfig,
    PolicyResult, RunParams,
};
use crate::diagnostics::{audit_clean_event, CleanEventReport};
use crate::environment::{run_rng, trial_seed, QuantumOracleSim, RegretTrace};
use crate::error::Result;

/// Mean and sample standard deviation across trials at one round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryPoint {
    pub t: u64,
    pub mean: f64,
    pub std: f64,
}

/// Per-checkpoint statistics over a set of traces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    pub trials: usize,
    pub points: Vec<SummaryPoint>,
}

impl Summary {
    /// Aligns traces on the union of their checkpoint rounds. A trace with no
    /// checkpoint at some round contributes its last earlier value, or 0.
    pub fn from_traces(traces: &[RegretTrace]) -> Self {
        let mut rounds: Vec<u64> = traces
            .iter()
            .flat_map(|t| t.checkpoints.iter().map(|c| c.round))
            .collect();
        rounds.sort_unstable();
        rounds.dedup();

        let mut cursors = vec![0usize; traces.len()];
        let mut values = vec![0.0; traces.len()];
        let points = rounds
            .into_iter()
            .map(|t| {
                for ((trace, cur), v) in traces.iter().zip(&mut cursors).zip(&mut values) {
                    while *cur < trace.checkpoints.len() && trace.checkpoints[*cur].round <= t {
                        *v = trace.checkpoints[*cur].cumulative_regret;
                        *cur += 1;
                    }
                }
                let (mean, std) = mean_std(&values);
                SummaryPoint { t, mean, std }
            })
            .collect();
        Summary {
            trials: traces.len(),
            points,
        }
    }

    pub fn last(&self) -> Option<SummaryPoint> {
        self.points.last().copied()
    }
}

/// Arithmetic mean and sample (n - 1) standard deviation; std is 0 for n < 2.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1) as f64).sqrt())
}

/// Standard error of a difference of two means under a pooled variance.
pub fn pooled_standard_error(std_a: f64, n_a: usize, std_b: f64, n_b: usize) -> f64 {
    if n_a + n_b <= 2 {
        return 0.0;
    }
    let pooled = ((n_a.saturating_sub(1)) as f64 * std_a * std_a
        + (n_b.saturating_sub(1)) as f64 * std_b * std_b)
        / (n_a + n_b - 2) as f64;
    (pooled * (1.0 / n_a as f64 + 1.0 / n_b as f64)).sqrt()
}

/// Everything produced by one experiment.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub traces: Vec<RegretTrace>,
    pub summary: Summary,
    /// Merged audit report, present when audits were requested.
    pub audit: Option<CleanEventReport>,
}

impl ExperimentOutput {
    pub fn final_regrets(&self) -> Vec<f64> {
        self.traces.iter().map(RegretTrace::final_regret).collect()
    }
}

/// Runs one trial; the RNG stream is seeded from `(master_seed, trial)`.
pub fn run_trial(config: &ExperimentConfig, trial: u64) -> Result<PolicyResult> {
    config.validate()?;
    let model = config.model();
    let metric = config.metric();
    let noise = config.noise_model();
    let params = RunParams::new(config.horizon, config.delta)
        .with_checkpoint_every(config.effective_checkpoint_every())
        .with_audit(config.audits)
        .with_run_id(trial);
    let rng = run_rng(trial_seed(config.master_seed, trial));
    let oracle = || {
        QuantumOracleSim::new(
            config.qmc_mode.into(),
            config.contract(),
            config.fault_injection,
            rng.clone(),
        )
    };
    match config.algorithm {
        Algorithm::Qlae => run_qlae(
            &model,
            &noise,
            &metric,
            &mut oracle(),
            &params,
            PackingConfig::default(),
        ),
        Algorithm::QlaeBv => run_qlae_bv(
            &model,
            &noise,
            &metric,
            &mut oracle(),
            &params,
            PackingConfig::default(),
        ),
        Algorithm::Qzooming => run_qzooming(
            &model,
            &noise,
            &metric,
            &mut oracle(),
            &params,
            &config.activation_lattice()?,
        ),
        Algorithm::QzoomingBv => run_qzooming_bv(
            &model,
            &noise,
            &metric,
            &mut oracle(),
            &params,
            &config.activation_lattice()?,
        ),
        Algorithm::ClassicalZooming => run_classical_zooming(
            &model,
            &noise,
            &metric,
            &mut rng.clone(),
            &params,
            &config.activation_lattice()?,
        ),
    }
}

/// Runs every `(config, trial)` job in parallel and groups results per config.
pub(crate) fn run_jobs(configs: &[ExperimentConfig]) -> Result<Vec<ExperimentOutput>> {
    for c in configs {
        c.validate()?;
    }
    let jobs: Vec<(usize, u64)> = configs
        .iter()
        .enumerate()
        .flat_map(|(i, c)| (0..c.trials).map(move |t| (i, t)))
        .collect();
    let results: Vec<PolicyResult> = jobs
        .par_iter()
        .map(|&(i, t)| run_trial(&configs[i], t))
        .collect::<Result<_>>()?;

    let mut grouped: Vec<Vec<PolicyResult>> = configs.iter().map(|_| Vec::new()).collect();
    for ((i, _), r) in jobs.into_iter().zip(results) {
        grouped[i].push(r);
    }
    Ok(configs
        .iter()
        .zip(grouped)
        .map(|(config, results)| {
            let audit = config.audits.then(|| {
                results
                    .iter()
                    .filter_map(|r| r.audit.as_ref())
                    .map(audit_clean_event)
                    .fold(CleanEventReport::default(), CleanEventReport::merge)
            });
            let traces: Vec<RegretTrace> = results.into_iter().map(|r| r.trace).collect();
            ExperimentOutput {
                config: config.clone(),
                summary: Summary::from_traces(&traces),
                traces,
                audit,
            }
        })
        .collect())
}

/// Runs all trials of one experiment.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    Ok(run_jobs(std::slice::from_ref(config))?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::Checkpoint;
    use crate::error::Error;
    use crate::harness::config::{NoiseChoice, RewardChoice};

    fn small(algorithm: Algorithm) -> ExperimentConfig {
        ExperimentConfig {
            algorithm,
            horizon: 5_000,
            trials: 3,
            master_seed: 11,
            ..Default::default()
        }
    }

    fn trace(run_id: u64, pts: &[(u64, f64)]) -> RegretTrace {
        RegretTrace {
            run_id,
            checkpoints: pts
                .iter()
                .map(|&(round, cumulative_regret)| Checkpoint {
                    round,
                    cumulative_regret,
                })
                .collect(),
        }
    }

    #[test]
    fn mean_std_matches_definition() {
        let (m, s) = mean_std(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(mean_std(&[7.0]), (7.0, 0.0));
    }

    #[test]
    fn pooled_se_of_equal_groups() {
        // equal stds and sizes: s * sqrt(2 / n)
        let se = pooled_standard_error(2.0, 10, 2.0, 10);
        assert!((se - 2.0 * (0.2f64).sqrt()).abs() < 1e-15);
        assert_eq!(pooled_standard_error(1.0, 1, 1.0, 1), 0.0);
    }

    #[test]
    fn summary_aligns_and_carries_forward() {
        let s = Summary::from_traces(&[
            trace(0, &[(10, 1.0), (20, 3.0)]),
            trace(1, &[(10, 2.0), (20, 5.0), (25, 6.0)]),
        ]);
        let ts: Vec<u64> = s.points.iter().map(|p| p.t).collect();
        assert_eq!(ts, [10, 20, 25]);
        assert_eq!(s.points[0].mean, 1.5);
        assert_eq!(s.points[2].mean, 4.5);
        assert_eq!(s.trials, 2);
    }

    #[test]
    fn same_seed_same_traces() {
        for algorithm in [
            Algorithm::Qlae,
            Algorithm::Qzooming,
            Algorithm::ClassicalZooming,
        ] {
            let config = ExperimentConfig {
                trials: 1,
                ..small(algorithm)
            };
            let a = run_experiment(&config).unwrap();
            let b = run_experiment(&config).unwrap();
            assert_eq!(a.traces, b.traces);
        }
    }

    #[test]
    fn trials_differ_and_summary_is_their_mean() {
        let out = run_experiment(&small(Algorithm::ClassicalZooming)).unwrap();
        assert_eq!(out.traces.len(), 3);
        assert_ne!(out.traces[0], out.traces[1]);
        let finals = out.final_regrets();
        let (mean, std) = mean_std(&finals);
        let last = out.summary.last().unwrap();
        assert_eq!(last.t, 5_000);
        assert!((last.mean - mean).abs() <= 1e-12 * mean.abs());
        assert_eq!(last.std, std);
        assert!(out.traces.iter().all(|t| t.checkpoints.len() == 100));
    }

    #[test]
    fn bounded_variance_runs_and_audits() {
        let config = ExperimentConfig {
            noise: NoiseChoice::Gaussian,
            reward: RewardChoice::Sine,
            audits: true,
            fault_injection: false,
            ..small(Algorithm::QzoomingBv)
        };
        let out = run_experiment(&config).unwrap();
        let report = out.audit.unwrap();
        assert!(report.estimates > 0);
        assert_eq!(report.estimate_violations, 0);
    }

    #[test]
    fn invalid_config_is_rejected_before_running() {
        let config = ExperimentConfig {
            horizon: 0,
            ..small(Algorithm::Qlae)
        };
        assert!(matches!(
            run_experiment(&config).unwrap_err(),
            Error::InvalidFields(_)
        ));
    }
}
