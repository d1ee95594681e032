//! Classical zooming baseline: one noisy sample per round.

use rand::Rng;

use super::qzooming::select;
use super::{PolicyResult, RunParams, Termination};
use crate::environment::{classical_sample, NoiseModel, RewardModel, RoundLedger};
use crate::error::{Error, Result};
use crate::geometry::{CoverageIndex, Lattice, Metric, Point};

/// Confidence radius `sqrt(2 ln T / n)`, or 1 for an unplayed arm.
pub fn classical_radius(pulls: u64, horizon: u64) -> f64 {
    if pulls == 0 {
        1.0
    } else {
        (2.0 * (horizon as f64).ln() / pulls as f64).sqrt()
    }
}

struct Arm {
    x: Point,
    gap: f64,
    mean: f64,
    pulls: u64,
    radius: f64,
}

impl Arm {
    fn index(&self) -> f64 {
        self.mean + 2.0 * self.radius
    }
}

/// Runs `T` rounds of classical zooming.
///
/// Every round activates the first uncovered lattice candidate (if any),
/// plays the arm maximising `mu_hat + 2 r`, and updates its running mean.
pub fn run_classical_zooming<R: Rng + ?Sized>(
    model: &RewardModel,
    noise: &NoiseModel,
    metric: &Metric,
    rng: &mut R,
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
    let horizon = params.horizon;
    let mut coverage = CoverageIndex::new(*activation, *metric)?;
    let mut ledger = RoundLedger::new(horizon, params.checkpoint_every);
    let mut arms: Vec<Arm> = Vec::new();
    // Balls wider than the diameter cover the same set as radius 1.
    let cover = |r: f64| r.min(1.0);

    while !ledger.is_exhausted() {
        if let Some(y) = coverage.first_uncovered() {
            coverage.add_ball(&y, 1.0);
            arms.push(Arm {
                gap: model.gap(&y),
                x: y,
                mean: 0.0,
                pulls: 0,
                radius: 1.0,
            });
        }
        let chosen = select(arms.iter().map(Arm::index))
            .ok_or_else(|| Error::Config("activation lattice produced no arm to select".into()))?;
        let arm = &mut arms[chosen];
        let reward = classical_sample(model, noise, &arm.x, rng);
        ledger.charge(1, arm.gap);
        arm.pulls += 1;
        arm.mean += (reward - arm.mean) / arm.pulls as f64;
        let old = arm.radius;
        arm.radius = classical_radius(arm.pulls, horizon);
        coverage.shrink_ball(&arm.x, cover(old), cover(arm.radius));
    }

    Ok(PolicyResult {
        trace: ledger.into_trace(params.run_id),
        stages_completed: horizon,
        termination: Termination::HorizonExhausted,
        audit: None,
    })
}
