use lipzoom_core::harness::{
    parse_summary, parse_traces, run_experiment, write_experiment, Algorithm, ExperimentConfig,
    NoiseChoice, RewardChoice,
};

fn config(algorithm: Algorithm, reward: RewardChoice, noise: NoiseChoice) -> ExperimentConfig {
    ExperimentConfig {
        algorithm,
        reward,
        noise,
        horizon: 4_000,
        trials: 3,
        master_seed: 11,
        ..Default::default()
    }
}

#[test]
fn csv_round_trip_matches_the_run() {
    let output = run_experiment(&config(
        Algorithm::QzoomingBv,
        RewardChoice::Sine,
        NoiseChoice::Gaussian,
    ))
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_experiment(&output, dir.path(), "").unwrap();

    let traces = parse_traces(std::fs::File::open(dir.path().join("traces.csv")).unwrap()).unwrap();
    assert_eq!(traces.len(), 3);
    for (read, ran) in traces.iter().zip(&output.traces) {
        assert_eq!(read.labels.algorithm, "qzooming_bv");
        assert_eq!(read.trace, *ran);
    }
    let summary =
        parse_summary(std::fs::File::open(dir.path().join("summary.csv")).unwrap()).unwrap();
    assert_eq!(summary.points, output.summary.points);
}

#[test]
fn every_policy_spends_the_whole_horizon() {
    for algorithm in Algorithm::ALL {
        let noise = if algorithm.uses_bounded_variance() {
            NoiseChoice::Gaussian
        } else {
            NoiseChoice::Bernoulli
        };
        for reward in RewardChoice::ALL {
            let output = run_experiment(&config(*algorithm, *reward, noise)).unwrap();
            for trace in &output.traces {
                assert_eq!(trace.final_round(), 4_000, "{algorithm} {reward}");
                let regrets: Vec<f64> = trace
                    .checkpoints
                    .iter()
                    .map(|c| c.cumulative_regret)
                    .collect();
                assert!(regrets.windows(2).all(|w| w[0] <= w[1]));
                assert!(regrets[regrets.len() - 1] <= 4_000.0);
            }
        }
    }
}

#[test]
fn trials_differ_but_reruns_agree() {
    let c = config(
        Algorithm::ClassicalZooming,
        RewardChoice::Triangle,
        NoiseChoice::Bernoulli,
    );
    let a = run_experiment(&c).unwrap();
    let b = run_experiment(&c).unwrap();
    assert_eq!(a.traces, b.traces);
    let finals = a.final_regrets();
    assert!(finals.windows(2).any(|w| w[0] != w[1]));
}
