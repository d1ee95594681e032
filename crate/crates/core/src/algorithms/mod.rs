//! Bandit policies over the unit cube.
//!
//! All policies charge every played round to a [`RoundLedger`] and stop when
//! the horizon is used up. With auditing on, they also record what the
//! diagnostics module needs to check the clean-event and gap inequalities.

mod classical;
mod qlae;
mod qzooming;

pub use classical::{classical_radius, run_classical_zooming};
pub use qlae::{run_qlae, run_qlae_bv, PackingConfig};
pub use qzooming::{run_qzooming, run_qzooming_bv};

use crate::environment::{QmcContract, QuantumOracleSim, RegretTrace};
use crate::error::{Error, Result};
use crate::geometry::Point;

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    HorizonExhausted,
    StageCapReached,
}

/// Parameters shared by every policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunParams {
    pub horizon: u64,
    pub delta: f64,
    pub checkpoint_every: u64,
    pub audit: bool,
    pub run_id: u64,
}

impl RunParams {
    pub fn new(horizon: u64, delta: f64) -> Self {
        Self {
            horizon,
            delta,
            checkpoint_every: (horizon / 100).max(1),
            audit: false,
            run_id: 0,
        }
    }

    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn with_checkpoint_every(mut self, every: u64) -> Self {
        self.checkpoint_every = every;
        self
    }

    pub fn with_run_id(mut self, run_id: u64) -> Self {
        self.run_id = run_id;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::Config("horizon T must be at least 1".into()));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Config(format!(
                "delta must lie in (0, 1), got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Per-call failure probability `delta / T`.
    pub(crate) fn call_delta(&self) -> f64 {
        self.delta / self.horizon as f64
    }
}

/// Output of one policy run.
#[derive(Debug, Clone)]
pub struct PolicyResult {
    pub trace: RegretTrace,
    pub stages_completed: u64,
    pub termination: Termination,
    pub audit: Option<AuditLog>,
}

/// One oracle estimate with the radius it was requested at.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRecord {
    pub stage: u64,
    pub arm: Point,
    pub estimate: f64,
    pub mean: f64,
    pub radius: f64,
}

/// A gap inequality `gap <= bound` checked for one arm at one stage.
#[derive(Debug, Clone, PartialEq)]
pub struct GapRecord {
    pub stage: u64,
    pub arm: Point,
    pub gap: f64,
    pub bound: f64,
}

/// Distance from the optimizer to the nearest elimination survivor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumRecord {
    pub stage: u64,
    pub nearest: f64,
    pub radius: f64,
}

/// Activation of a new zooming arm. `margin` is the smallest
/// `D(x, y) - radius(x)` over the arms active before `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivationRecord {
    pub stage: u64,
    pub arm: Point,
    pub margin: f64,
}

/// Per-stage snapshot of an elimination run.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationStage {
    pub stage: u64,
    pub eps: f64,
    pub active: Vec<(Point, f64)>,
    pub survivors: Vec<Point>,
}

/// Per-stage snapshot of a zooming run, taken after the estimate update.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoomingStage {
    pub stage: u64,
    pub selected: usize,
    pub radius_before: f64,
    pub estimates: Vec<f64>,
    pub radii: Vec<f64>,
}

/// Everything recorded by a run with auditing on.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AuditLog {
    pub estimates: Vec<EstimateRecord>,
    pub gaps: Vec<GapRecord>,
    pub optimum: Vec<OptimumRecord>,
    pub activations: Vec<ActivationRecord>,
    pub elimination_stages: Vec<EliminationStage>,
    pub zooming_stages: Vec<ZoomingStage>,
}

fn require_bounded(oracle: &QuantumOracleSim) -> Result<()> {
    match oracle.contract() {
        QmcContract::Bounded { .. } => Ok(()),
        other => Err(Error::Config(format!(
            "policy expects the bounded-noise oracle, got {other:?}"
        ))),
    }
}

fn require_bounded_variance(
    oracle: &QuantumOracleSim,
    noise: &crate::environment::NoiseModel,
) -> Result<()> {
    let Some(noise_sigma) = noise.sigma() else {
        return Err(Error::Config(
            "bounded-variance policy needs Gaussian noise".into(),
        ));
    };
    match oracle.contract() {
        QmcContract::BoundedVariance { sigma, .. } if sigma == noise_sigma => Ok(()),
        other => Err(Error::Config(format!(
            "policy expects the bounded-variance oracle with sigma {noise_sigma}, got {other:?}"
        ))),
    }
}
