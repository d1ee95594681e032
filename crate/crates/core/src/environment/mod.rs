//! Reward models, noise, simulated QMC oracles and round accounting.

mod budget;
mod ledger;
mod noise;
mod oracle;
mod reward;
mod seed;

pub use budget::{qmc1_budget, qmc2_budget, QmcContract};
pub use ledger::{Checkpoint, RegretTrace, RoundLedger};
pub use noise::{classical_sample, NoiseModel};
pub use oracle::{OracleMode, QmcEstimate, QuantumOracleSim};
pub use reward::{RewardKind, RewardModel};
pub use seed::{run_rng, trial_seed};
