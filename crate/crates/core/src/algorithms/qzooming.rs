//! Quantum zooming.
//!
//! Each stage activates at most one uncovered lattice candidate, selects the
//! arm maximising `mu_hat + 2 eps(x)`, halves that arm's radius and spends
//! one QMC call at the new radius on it. Unselected arms keep their estimate
//! and radius. The per-call failure probability is `delta / T`.

use super::{
    require_bounded, require_bounded_variance, ActivationRecord, AuditLog, EstimateRecord,
    GapRecord, PolicyResult, RunParams, Termination, ZoomingStage,
};
use crate::environment::{NoiseModel, QuantumOracleSim, RewardModel, RoundLedger};
use crate::error::{Error, Result};
use crate::geometry::{CoverageIndex, Lattice, Metric, Point};

/// An active arm of a zooming run.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoomingArm {
    pub x: Point,
    pub radius: f64,
    pub estimate: f64,
    pub times_selected: u32,
}

impl ZoomingArm {
    /// Fresh arm: radius 1 and estimate 0, which is within 1 of any mean in `[0, 1]`.
    pub fn fresh(x: Point) -> Self {
        Self {
            x,
            radius: 1.0,
            estimate: 0.0,
            times_selected: 0,
        }
    }

    pub fn index(&self) -> f64 {
        self.estimate + 2.0 * self.radius
    }
}

/// Position of the largest index; the earliest arm wins ties.
pub(crate) fn select<I: IntoIterator<Item = f64>>(indices: I) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in indices.into_iter().enumerate() {
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Zooming with the bounded-noise (`QMC1`) oracle.
pub fn run_qzooming(
    model: &RewardModel,
    noise: &NoiseModel,
    metric: &Metric,
    oracle: &mut QuantumOracleSim,
    params: &RunParams,
    activation: &Lattice,
) -> Result<PolicyResult> {
    require_bounded(oracle)?;
    run(model, noise, metric, oracle, params, activation)
}

/// Zooming with the bounded-variance (`QMC2`) oracle.
pub fn run_qzooming_bv(
    model: &RewardModel,
    noise: &NoiseModel,
    metric: &Metric,
    oracle: &mut QuantumOracleSim,
    params: &RunParams,
    activation: &Lattice,
) -> Result<PolicyResult> {
    require_bounded_variance(oracle, noise)?;
    run(model, noise, metric, oracle, params, activation)
}

fn run(
    model: &RewardModel,
    noise: &NoiseModel,
    metric: &Metric,
    oracle: &mut QuantumOracleSim,
    params: &RunParams,
    activation: &Lattice,
) -> Result<PolicyResult> {
    params.validate()?;
    if model.dimension() != metric.dimension() {
        return Err(Error::DimensionMismatch {
            expected: metric.dimension(),
            got: model.dimension(),
        });
    }
    let mut coverage = CoverageIndex::new(*activation, *metric)?;
    let mut ledger = RoundLedger::new(params.horizon, params.checkpoint_every);
    let mut audit = params.audit.then(AuditLog::default);
    let call_delta = params.call_delta();
    let mut arms: Vec<ZoomingArm> = Vec::new();
    let mut stages_completed = 0;

    for stage in 1.. {
        if ledger.is_exhausted() {
            break;
        }

        if let Some(y) = coverage.first_uncovered() {
            if let Some(log) = audit.as_mut() {
                let margin = arms
                    .iter()
                    .map(|a| metric.dist(a.x.coords(), y.coords()) - a.radius)
                    .fold(f64::INFINITY, f64::min);
                log.activations.push(ActivationRecord {
                    stage,
                    arm: y.clone(),
                    margin,
                });
            }
            coverage.add_ball(&y, 1.0);
            arms.push(ZoomingArm::fresh(y));
        }

        if let Some(log) = audit.as_mut() {
            for a in &arms {
                log.gaps.push(GapRecord {
                    stage,
                    arm: a.x.clone(),
                    gap: model.gap(&a.x),
                    bound: 3.0 * a.radius,
                });
            }
        }

        let chosen = select(arms.iter().map(ZoomingArm::index))
            .ok_or_else(|| Error::Config("activation lattice produced no arm to select".into()))?;
        let arm = &mut arms[chosen];
        let radius_before = arm.radius;
        arm.radius /= 2.0;
        arm.times_selected += 1;
        coverage.shrink_ball(&arm.x, radius_before, arm.radius);

        let outcome =
            match oracle.estimate(model, noise, &arm.x, arm.radius, call_delta, &mut ledger) {
                Ok(outcome) => outcome,
                Err(Error::HorizonExhausted) => break,
                Err(e) => return Err(e),
            };
        if outcome.horizon_exhausted {
            break;
        }
        arm.estimate = outcome.estimate;
        stages_completed = stage;

        if let Some(log) = audit.as_mut() {
            log.estimates.push(EstimateRecord {
                stage,
                arm: arm.x.clone(),
                estimate: outcome.estimate,
                mean: model.mu(&arm.x),
                radius: arm.radius,
            });
            log.zooming_stages.push(ZoomingStage {
                stage,
                selected: chosen,
                radius_before,
                estimates: arms.iter().map(|a| a.estimate).collect(),
                radii: arms.iter().map(|a| a.radius).collect(),
            });
        }
    }

    Ok(PolicyResult {
        trace: ledger.into_trace(params.run_id),
        stages_completed,
        termination: Termination::HorizonExhausted,
        audit,
    })
}
