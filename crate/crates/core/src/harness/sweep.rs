use std::path::Path;

use super::config::{Algorithm, ExperimentConfig, NoiseChoice, RewardChoice};
use super::csv_io::{emit_csv, TraceLabels};
use super::plot::{emit_plot, PlotSeries};
use super::runner::{run_jobs, ExperimentOutput};
use crate::error::{Error, Result};

/// A cartesian product of algorithms, rewards and noises sharing the other
/// settings of `base`.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub base: ExperimentConfig,
    /// Policies per panel. Under Gaussian noise the quantum ones run their
    /// bounded-variance variant.
    pub algorithms: Vec<Algorithm>,
    pub rewards: Vec<RewardChoice>,
    pub noises: Vec<NoiseChoice>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            base: ExperimentConfig {
                horizon: 50_000,
                trials: 10,
                ..Default::default()
            },
            algorithms: vec![
                Algorithm::Qlae,
                Algorithm::Qzooming,
                Algorithm::ClassicalZooming,
            ],
            rewards: RewardChoice::ALL.to_vec(),
            noises: NoiseChoice::ALL.to_vec(),
        }
    }
}

/// One panel: a reward under a noise model, with a result per algorithm.
#[derive(Debug, Clone)]
pub struct Panel {
    pub reward: RewardChoice,
    pub noise: NoiseChoice,
    pub results: Vec<ExperimentOutput>,
}

impl Panel {
    pub fn name(&self) -> String {
        format!("{}_{}", self.reward, self.noise)
    }

    /// Result of the algorithm family `algorithm` in this panel.
    pub fn result(&self, algorithm: Algorithm) -> Option<&ExperimentOutput> {
        let wanted = algorithm.for_noise(self.noise);
        self.results.iter().find(|r| r.config.algorithm == wanted)
    }
}

impl SweepConfig {
    /// Config of every cell, panel-major.
    pub fn cells(&self) -> Vec<ExperimentConfig> {
        let mut cells = Vec::new();
        for &reward in &self.rewards {
            for &noise in &self.noises {
                for &algorithm in &self.algorithms {
                    cells.push(ExperimentConfig {
                        algorithm: algorithm.for_noise(noise),
                        reward,
                        noise,
                        ..self.base.clone()
                    });
                }
            }
        }
        cells
    }
}

/// Runs every cell; all `(cell, trial)` jobs share one thread pool.
pub fn sweep(config: &SweepConfig) -> Result<Vec<Panel>> {
    if config.algorithms.is_empty() || config.rewards.is_empty() || config.noises.is_empty() {
        return Err(Error::Config(
            "sweep needs at least one algorithm, reward and noise".into(),
        ));
    }
    let mut outputs = run_jobs(&config.cells())?.into_iter();
    let mut panels = Vec::new();
    for &reward in &config.rewards {
        for &noise in &config.noises {
            let results = outputs.by_ref().take(config.algorithms.len()).collect();
            panels.push(Panel {
                reward,
                noise,
                results,
            });
        }
    }
    Ok(panels)
}

pub fn labels(config: &ExperimentConfig) -> TraceLabels {
    TraceLabels {
        algorithm: config.algorithm.to_string(),
        reward: config.reward.to_string(),
        noise: config.noise.to_string(),
    }
}

/// Writes `<prefix>traces.csv` and `<prefix>summary.csv` for one experiment.
pub fn write_experiment(output: &ExperimentOutput, dir: &Path, prefix: &str) -> Result<()> {
    emit_csv(
        &labels(&output.config),
        &output.traces,
        &output.summary,
        &dir.join(format!("{prefix}traces.csv")),
        &dir.join(format!("{prefix}summary.csv")),
    )
}

pub fn panel_title(reward: RewardChoice, noise: NoiseChoice) -> String {
    let r = match reward {
        RewardChoice::Triangle => "Triangle",
        RewardChoice::Sine => "Sine",
        RewardChoice::TwoDim => "Two-Dimensional",
    };
    let n = match noise {
        NoiseChoice::Bernoulli => "Bernoulli",
        NoiseChoice::Gaussian => "Gaussian",
    };
    format!("{r} ({n})")
}

/// Per-cell CSVs `<reward>_<noise>_<algorithm>_{traces,summary}.csv` and
/// one `<reward>_<noise>.svg` per panel.
pub fn write_sweep(panels: &[Panel], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for panel in panels {
        for r in &panel.results {
            write_experiment(r, dir, &format!("{}_{}_", panel.name(), r.config.algorithm))?;
        }
        let series: Vec<PlotSeries> = panel
            .results
            .iter()
            .map(|r| PlotSeries {
                label: r.config.algorithm.to_string(),
                summary: r.summary.clone(),
            })
            .collect();
        emit_plot(
            &series,
            &panel_title(panel.reward, panel.noise),
            &dir.join(format!("{}.svg", panel.name())),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sweep_has_eighteen_cells() {
        let cells = SweepConfig::default().cells();
        assert_eq!(cells.len(), 18);
        let gaussian: Vec<Algorithm> = cells
            .iter()
            .filter(|c| c.noise == NoiseChoice::Gaussian)
            .map(|c| c.algorithm)
            .collect();
        assert!(gaussian.contains(&Algorithm::QlaeBv));
        assert!(gaussian.contains(&Algorithm::QzoomingBv));
        assert!(!gaussian.contains(&Algorithm::Qlae));
        assert!(cells.iter().all(|c| c.horizon == 50_000 && c.trials == 10));
    }

    #[test]
    fn small_sweep_writes_every_file() {
        let config = SweepConfig {
            base: ExperimentConfig {
                horizon: 2_000,
                trials: 2,
                ..Default::default()
            },
            rewards: vec![RewardChoice::Triangle, RewardChoice::TwoDim],
            ..Default::default()
        };
        let panels = sweep(&config).unwrap();
        assert_eq!(panels.len(), 4);
        let dir = tempfile::tempdir().unwrap();
        write_sweep(&panels, dir.path()).unwrap();
        let mut names: Vec<String> = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        names.sort();
        assert_eq!(
            names.iter().filter(|n| n.ends_with("_traces.csv")).count(),
            12
        );
        assert_eq!(
            names.iter().filter(|n| n.ends_with("_summary.csv")).count(),
            12
        );
        assert_eq!(names.iter().filter(|n| n.ends_with(".svg")).count(), 4);
        assert!(names.contains(&"twodim_gaussian_qzooming_bv_traces.csv".to_string()));
        let p = &panels[3];
        assert_eq!(p.name(), "twodim_gaussian");
        assert_eq!(
            p.result(Algorithm::Qlae).unwrap().config.algorithm,
            Algorithm::QlaeBv
        );
    }
}
