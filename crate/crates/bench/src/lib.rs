//! Fixtures shared by the benchmarks.

use lipzoom_core::harness::{Algorithm, ExperimentConfig, NoiseChoice, RewardChoice};

/// Single-trial config with fault injection off, for timing one run.
pub fn bench_config(
    algorithm: Algorithm,
    reward: RewardChoice,
    noise: NoiseChoice,
    horizon: u64,
) -> ExperimentConfig {
    ExperimentConfig {
        algorithm: algorithm.for_noise(noise),
        reward,
        noise,
        horizon,
        trials: 1,
        master_seed: 1,
        fault_injection: false,
        ..Default::default()
    }
}
