use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lipzoom_core::diagnostics::{
    default_profile_grid, default_profile_radii, zooming_profile, CleanEventReport,
};
use lipzoom_core::harness::{
    emit_plot, mean_std, panel_title, run_experiment, sweep, write_experiment, write_sweep,
    Algorithm, ExperimentConfig, NoiseChoice, PlotSeries, QmcMode, RewardChoice, SweepConfig,
};
use lipzoom_core::{Error, Lattice, Result};

const SEED_ENV: &str = "LIPZOOM_SEED";

/// Lipschitz bandit experiments with simulated quantum oracles.
#[derive(Debug, Parser)]
#[command(name = "lipzoom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one configuration and write CSV traces and an SVG plot.
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run every algorithm on every reward and noise model.
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value = "sweep-out")]
        out: PathBuf,
    },
    /// Run with audits on and print the clean-event report.
    Audit {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Estimate the zooming dimension of a reward function.
    Dim {
        #[arg(long, default_value = "triangle")]
        reward: RewardChoice,
        /// Balls have radius r / divisor.
        #[arg(long, default_value_t = 3.0)]
        divisor: f64,
        /// Diagnostic grid cells per axis.
        #[arg(long)]
        grid: Option<u64>,
    },
}

/// Flags mirroring the config keys. Precedence: flag, then LIPZOOM_SEED for
/// the seed, then `--config`, then defaults.
#[derive(Debug, Args)]
struct ConfigArgs {
    /// Flat key=value file with the same keys as the flags.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Comma-separated for sweep.
    #[arg(long, value_delimiter = ',')]
    algorithm: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',')]
    reward: Vec<RewardChoice>,
    #[arg(long, value_delimiter = ',')]
    noise: Vec<NoiseChoice>,
    #[arg(long)]
    sigma: Option<f64>,
    /// Horizon.
    #[arg(long = "T", value_name = "T")]
    horizon: Option<u64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    master_seed: Option<u64>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    c2: Option<f64>,
    #[arg(long)]
    grid_resolution: Option<u64>,
    #[arg(long)]
    qmc_mode: Option<QmcMode>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    fault_injection: Option<bool>,
    #[arg(long)]
    checkpoint_every: Option<u64>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    audits: Option<bool>,
}

impl ConfigArgs {
    fn resolve(&self, mut config: ExperimentConfig) -> Result<ExperimentConfig> {
        if let Some(path) = &self.config {
            config.apply_file(path)?;
        }
        if let Ok(seed) = std::env::var(SEED_ENV) {
            config.master_seed = seed
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{SEED_ENV}: cannot parse '{seed}'")))?;
        }
        if let Some(&a) = self.algorithm.first() {
            config.algorithm = a;
        }
        if let Some(&r) = self.reward.first() {
            config.reward = r;
        }
        if let Some(&n) = self.noise.first() {
            config.noise = n;
        }
        macro_rules! take {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(v) = self.$flag { config.$field = v; })*
            };
        }
        take!(
            sigma => sigma,
            horizon => horizon,
            delta => delta,
            trials => trials,
            master_seed => master_seed,
            c1 => c1,
            c2 => c2,
            qmc_mode => qmc_mode,
            fault_injection => fault_injection,
            audits => audits
        );
        if self.grid_resolution.is_some() {
            config.grid_resolution = self.grid_resolution;
        }
        if self.checkpoint_every.is_some() {
            config.checkpoint_every = self.checkpoint_every;
        }
        config.validate()?;
        Ok(config)
    }

    fn single(&self) -> Result<ExperimentConfig> {
        for (name, n) in [
            ("algorithm", self.algorithm.len()),
            ("reward", self.reward.len()),
            ("noise", self.noise.len()),
        ] {
            if n > 1 {
                return Err(Error::Config(format!(
                    "{name}: takes one value outside sweep"
                )));
            }
        }
        self.resolve(ExperimentConfig::default())
    }
}

fn pick<T: Clone>(given: &[T], fallback: Vec<T>) -> Vec<T> {
    if given.is_empty() {
        fallback
    } else {
        given.to_vec()
    }
}

fn report_finals(label: &str, finals: &[f64]) {
    let (mean, std) = mean_std(finals);
    println!(
        "{label:<28} final regret {mean:>12.2} +/- {std:.2} (n={})",
        finals.len()
    );
}

fn cmd_run(args: &ConfigArgs, out: &Path) -> Result<()> {
    let config = args.single()?;
    let output = run_experiment(&config)?;
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    write_experiment(&output, out, "")?;
    emit_plot(
        &[PlotSeries {
            label: config.algorithm.to_string(),
            summary: output.summary.clone(),
        }],
        &panel_title(config.reward, config.noise),
        &out.join("regret.svg"),
    )?;
    std::fs::write(out.join("config.txt"), config.to_kv())
        .map_err(|e| Error::io(out.join("config.txt"), e))?;
    report_finals(config.algorithm.as_str(), &output.final_regrets());
    if let Some(report) = output.audit {
        print_report(&report);
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_sweep(args: &ConfigArgs, out: &Path) -> Result<()> {
    let defaults = SweepConfig::default();
    let base = args.resolve(defaults.base.clone())?;
    let config = SweepConfig {
        base,
        algorithms: pick(&args.algorithm, defaults.algorithms),
        rewards: pick(&args.reward, defaults.rewards),
        noises: pick(&args.noise, defaults.noises),
    };
    let panels = sweep(&config)?;
    write_sweep(&panels, out)?;
    for panel in &panels {
        println!("{}", panel_title(panel.reward, panel.noise));
        for r in &panel.results {
            report_finals(&format!("  {}", r.config.algorithm), &r.final_regrets());
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn print_report(report: &CleanEventReport) {
    let fraction = report
        .violation_fraction()
        .map_or("n/a".to_string(), |f| format!("{f:.5}"));
    println!(
        "estimates {} violations {} fraction {fraction}",
        report.estimates, report.estimate_violations
    );
    println!(
        "gap checks {} violations {}",
        report.gap_checks, report.gap_violations
    );
    println!(
        "optimum checks {} violations {}",
        report.optimum_checks, report.optimum_violations
    );
    println!(
        "activations {} separation violations {}",
        report.activation_checks, report.separation_violations
    );
}

fn cmd_audit(args: &ConfigArgs) -> Result<()> {
    let mut config = args.single()?;
    config.audits = true;
    let output = run_experiment(&config)?;
    println!(
        "{} on {} ({}), fault injection {}",
        config.algorithm, config.reward, config.noise, config.fault_injection
    );
    print_report(&output.audit.unwrap_or_default());
    Ok(())
}

fn cmd_dim(reward: RewardChoice, divisor: f64, grid: Option<u64>) -> Result<()> {
    let model = reward.model();
    let lattice = match grid {
        Some(n) => Lattice::new(model.dimension(), n)?,
        None => default_profile_grid(model.dimension())?,
    };
    let profile = zooming_profile(
        &model,
        model.metric(),
        &default_profile_radii(),
        divisor,
        &lattice,
    )?;
    println!("r,count");
    for (r, c) in profile.radii.iter().zip(&profile.counts) {
        println!("{r},{c}");
    }
    println!(
        "fitted dimension {:.4} (residual {:.4})",
        profile.fitted_dimension, profile.fit_residual
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, out } => cmd_run(config, out),
        Command::Sweep { config, out } => cmd_sweep(config, out),
        Command::Audit { config } => cmd_audit(config),
        Command::Dim {
            reward,
            divisor,
            grid,
        } => cmd_dim(*reward, *divisor, *grid),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
