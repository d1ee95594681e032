//! Lipschitz bandits over `[0, 1]^d` with simulated quantum Monte Carlo
//! reward oracles.
//!
//! The quantum policies are elimination (`run_qlae`) and zooming
//! (`run_qzooming`), each with a bounded-variance variant; classical zooming
//! is the baseline. [`harness`] runs seeded multi-trial experiments and
//! writes CSV traces and SVG plots.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod diagnostics;
pub mod environment;
pub mod error;
pub mod geometry;
pub mod harness;

pub use algorithms::{
    classical_radius, run_classical_zooming, run_qlae, run_qlae_bv, run_qzooming, run_qzooming_bv,
    AuditLog, PackingConfig, PolicyResult, RunParams, Termination,
};
pub use environment::{
    qmc1_budget, qmc2_budget, Checkpoint, NoiseModel, OracleMode, QmcContract, QmcEstimate,
    QuantumOracleSim, RegretTrace, RewardKind, RewardModel, RoundLedger,
};
pub use error::{Error, FieldError, Result};
pub use geometry::{maximal_packing, ActiveRegion, Lattice, Metric, MetricKind, Point};
