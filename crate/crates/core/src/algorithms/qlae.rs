//! Quantum Lipschitz adaptive elimination.
//!
//! Stage `m` works at radius `eps_m = 2^-m`. Every point of the current
//! packing is estimated to accuracy `eps_m`; points more than `3 eps_m`
//! below the best estimate are dropped, and the union of radius-`eps_m`
//! balls around the survivors is re-packed at `eps_m / 2`.

use super::{
    require_bounded, require_bounded_variance, AuditLog, EliminationStage, EstimateRecord,
    GapRecord, OptimumRecord, PolicyResult, RunParams, Termination,
};
use crate::environment::{NoiseModel, QuantumOracleSim, RewardModel, RoundLedger};
use crate::error::{Error, Result};
use crate::geometry::{maximal_packing, ActiveRegion, Lattice, Metric, Point};

/// Packing lattice and stage limit for elimination runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PackingConfig {
    /// Lattice spacing is at most `eps / refinement`; must be at least 4.
    pub refinement: u32,
    pub stage_cap: u64,
}

impl Default for PackingConfig {
    fn default() -> Self {
        Self {
            refinement: 4,
            stage_cap: 64,
        }
    }
}

/// Elimination with the bounded-noise (`QMC1`) oracle.
pub fn run_qlae(
    model: &RewardModel,
    noise: &NoiseModel,
    metric: &Metric,
    oracle: &mut QuantumOracleSim,
    params: &RunParams,
    packing: PackingConfig,
) -> Result<PolicyResult> {
    require_bounded(oracle)?;
    run(model, noise, metric, oracle, params, packing)
}

/// Elimination with the bounded-variance (`QMC2`) oracle.
pub fn run_qlae_bv(
    model: &RewardModel,
    noise: &NoiseModel,
    metric: &Metric,
    oracle: &mut QuantumOracleSim,
    params: &RunParams,
    packing: PackingConfig,
) -> Result<PolicyResult> {
    require_bounded_variance(oracle, noise)?;
    run(model, noise, metric, oracle, params, packing)
}

fn pack(region: &ActiveRegion, metric: &Metric, eps: f64, refinement: u32) -> Result<Vec<Point>> {
    let lattice = Lattice::for_packing(metric.dimension(), eps, refinement)?;
    maximal_packing(region, metric, eps, &lattice)
}

fn run(
    model: &RewardModel,
    noise: &NoiseModel,
    metric: &Metric,
    oracle: &mut QuantumOracleSim,
    params: &RunParams,
    packing: PackingConfig,
) -> Result<PolicyResult> {
    params.validate()?;
    if packing.refinement < 4 {
        return Err(Error::Config(format!(
            "packing refinement must be at least 4, got {}",
            packing.refinement
        )));
    }
    if model.dimension() != metric.dimension() {
        return Err(Error::DimensionMismatch {
            expected: metric.dimension(),
            got: model.dimension(),
        });
    }

    let mut ledger = RoundLedger::new(params.horizon, params.checkpoint_every);
    let mut audit = params.audit.then(AuditLog::default);
    let call_delta = params.call_delta();

    let mut active = pack(
        &ActiveRegion::whole_space(metric.dimension()),
        metric,
        0.5,
        packing.refinement,
    )?;
    let mut stages_completed = 0;
    let mut termination = Termination::StageCapReached;

    'stages: for m in 1..=packing.stage_cap {
        let eps = 0.5f64.powi(m as i32);
        let eps_prev = 2.0 * eps;

        if let Some(log) = audit.as_mut() {
            for x in &active {
                log.gaps.push(GapRecord {
                    stage: m,
                    arm: x.clone(),
                    gap: model.gap(x),
                    bound: 7.0 * eps_prev,
                });
            }
        }

        let mut estimates = Vec::with_capacity(active.len());
        for x in &active {
            let outcome = match oracle.estimate(model, noise, x, eps, call_delta, &mut ledger) {
                Ok(outcome) => outcome,
                Err(Error::HorizonExhausted) => {
                    termination = Termination::HorizonExhausted;
                    break 'stages;
                }
                Err(e) => return Err(e),
            };
            if outcome.horizon_exhausted {
                termination = Termination::HorizonExhausted;
                break 'stages;
            }
            if let Some(log) = audit.as_mut() {
                log.estimates.push(EstimateRecord {
                    stage: m,
                    arm: x.clone(),
                    estimate: outcome.estimate,
                    mean: model.mu(x),
                    radius: eps,
                });
            }
            estimates.push(outcome.estimate);
        }

        let best = estimates.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let survivors: Vec<Point> = active
            .iter()
            .zip(&estimates)
            .filter(|(_, &e)| e >= best - 3.0 * eps)
            .map(|(x, _)| x.clone())
            .collect();

        if let Some(log) = audit.as_mut() {
            let nearest = survivors
                .iter()
                .map(|s| metric.distance(s, model.x_star()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            log.optimum.push(OptimumRecord {
                stage: m,
                nearest,
                radius: eps,
            });
            log.elimination_stages.push(EliminationStage {
                stage: m,
                eps,
                active: active
                    .iter()
                    .cloned()
                    .zip(estimates.iter().copied())
                    .collect(),
                survivors: survivors.clone(),
            });
        }
        stages_completed = m;

        if m == packing.stage_cap {
            break;
        }
        let region = ActiveRegion::new(survivors, eps)?;
        active = pack(&region, metric, eps / 2.0, packing.refinement)?;
    }

    Ok(PolicyResult {
        trace: ledger.into_trace(params.run_id),
        stages_completed,
        termination,
        audit,
    })
}
