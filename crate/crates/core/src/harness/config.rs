use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::environment::{NoiseModel, OracleMode, QmcContract, RewardModel};
use crate::error::{Error, FieldError, Result};
use crate::geometry::{Lattice, Metric};

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => {
                        let allowed: Vec<&str> = vec![$($text),+];
                        Err(Error::Parse(format!(
                            "unknown {} '{}', expected one of {}",
                            stringify!($name).to_lowercase(),
                            s,
                            allowed.join(", ")
                        )))
                    }
                }
            }
        }
    };
}

named_enum!(
    /// Policy run by an experiment.
    Algorithm {
        Qlae => "qlae",
        QlaeBv => "qlae_bv",
        Qzooming => "qzooming",
        QzoomingBv => "qzooming_bv",
        ClassicalZooming => "classical_zooming",
    }
);

named_enum!(
    /// Built-in reward function.
    RewardChoice {
        Triangle => "triangle",
        Sine => "sine",
        TwoDim => "twodim",
    }
);

named_enum!(
    NoiseChoice {
        Bernoulli => "bernoulli",
        Gaussian => "gaussian",
    }
);

named_enum!(
    QmcMode {
        Contract => "contract",
        Empirical => "empirical",
    }
);

impl Algorithm {
    pub fn uses_bounded_variance(&self) -> bool {
        matches!(self, Algorithm::QlaeBv | Algorithm::QzoomingBv)
    }

    /// Variant matching a noise model: bounded-variance under Gaussian noise.
    pub fn for_noise(&self, noise: NoiseChoice) -> Algorithm {
        match (self, noise) {
            (Algorithm::Qlae | Algorithm::QlaeBv, NoiseChoice::Gaussian) => Algorithm::QlaeBv,
            (Algorithm::Qlae | Algorithm::QlaeBv, NoiseChoice::Bernoulli) => Algorithm::Qlae,
            (Algorithm::Qzooming | Algorithm::QzoomingBv, NoiseChoice::Gaussian) => {
                Algorithm::QzoomingBv
            }
            (Algorithm::Qzooming | Algorithm::QzoomingBv, NoiseChoice::Bernoulli) => {
                Algorithm::Qzooming
            }
            (Algorithm::ClassicalZooming, _) => Algorithm::ClassicalZooming,
        }
    }
}

impl RewardChoice {
    pub fn model(&self) -> RewardModel {
        match self {
            RewardChoice::Triangle => RewardModel::triangle(),
            RewardChoice::Sine => RewardModel::sine(),
            RewardChoice::TwoDim => RewardModel::two_dim(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            RewardChoice::TwoDim => 2,
            _ => 1,
        }
    }

    /// Activation lattice resolution per axis used when none is configured.
    pub fn default_grid_resolution(&self) -> u64 {
        match self.dimension() {
            1 => 512,
            _ => 64,
        }
    }
}

impl From<QmcMode> for OracleMode {
    fn from(mode: QmcMode) -> Self {
        match mode {
            QmcMode::Contract => OracleMode::Contract,
            QmcMode::Empirical => OracleMode::EmpiricalMean,
        }
    }
}

/// Every setting of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub reward: RewardChoice,
    pub noise: NoiseChoice,
    pub sigma: f64,
    pub horizon: u64,
    pub delta: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub c1: f64,
    pub c2: f64,
    /// Activation lattice cells per axis; `None` picks the reward's default.
    pub grid_resolution: Option<u64>,
    pub qmc_mode: QmcMode,
    pub fault_injection: bool,
    /// `None` means `T / 100`.
    pub checkpoint_every: Option<u64>,
    pub audits: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Qzooming,
            reward: RewardChoice::Triangle,
            noise: NoiseChoice::Bernoulli,
            sigma: 0.1f64.sqrt(),
            horizon: 300_000,
            delta: 0.05,
            trials: 30,
            master_seed: 0,
            c1: 2.0,
            c2: 2.0,
            grid_resolution: None,
            qmc_mode: QmcMode::Contract,
            fault_injection: true,
            checkpoint_every: None,
            audits: false,
        }
    }
}

/// Config keys accepted by [`ExperimentConfig::set`], in canonical spelling.
pub const CONFIG_KEYS: &[&str] = &[
    "algorithm",
    "reward",
    "noise",
    "sigma",
    "T",
    "delta",
    "trials",
    "master-seed",
    "c1",
    "c2",
    "grid-resolution",
    "qmc-mode",
    "fault-injection",
    "checkpoint-every",
    "audits",
];

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{key}: cannot parse '{value}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(Error::Parse(format!(
            "{key}: expected a boolean, got '{other}'"
        ))),
    }
}

impl ExperimentConfig {
    pub fn effective_grid_resolution(&self) -> u64 {
        self.grid_resolution
            .unwrap_or_else(|| self.reward.default_grid_resolution())
    }

    pub fn effective_checkpoint_every(&self) -> u64 {
        self.checkpoint_every.unwrap_or((self.horizon / 100).max(1))
    }

    pub fn model(&self) -> RewardModel {
        self.reward.model()
    }

    pub fn metric(&self) -> Metric {
        *self.model().metric()
    }

    pub fn noise_model(&self) -> NoiseModel {
        match self.noise {
            NoiseChoice::Bernoulli => NoiseModel::Bernoulli,
            NoiseChoice::Gaussian => NoiseModel::Gaussian { sigma: self.sigma },
        }
    }

    pub fn contract(&self) -> QmcContract {
        if self.algorithm.uses_bounded_variance() {
            QmcContract::BoundedVariance {
                c2: self.c2,
                sigma: self.sigma,
            }
        } else {
            QmcContract::Bounded { c1: self.c1 }
        }
    }

    pub fn activation_lattice(&self) -> Result<Lattice> {
        Lattice::new(self.reward.dimension(), self.effective_grid_resolution())
    }

    /// Sets one field from its key, accepting `-` or `_` as separators.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().replace('_', "-").as_str() {
            "algorithm" => self.algorithm = value.parse()?,
            "reward" => self.reward = value.parse()?,
            "noise" => self.noise = value.parse()?,
            "sigma" => self.sigma = parse_num(key, value)?,
            "T" | "horizon" => self.horizon = parse_num(key, value)?,
            "delta" => self.delta = parse_num(key, value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "master-seed" => self.master_seed = parse_num(key, value)?,
            "c1" => self.c1 = parse_num(key, value)?,
            "c2" => self.c2 = parse_num(key, value)?,
            "grid-resolution" => self.grid_resolution = Some(parse_num(key, value)?),
            "qmc-mode" => self.qmc_mode = value.parse()?,
            "fault-injection" => self.fault_injection = parse_bool(key, value)?,
            "checkpoint-every" => self.checkpoint_every = Some(parse_num(key, value)?),
            "audits" => self.audits = parse_bool(key, value)?,
            other => {
                return Err(Error::Parse(format!(
                    "unknown config key '{other}', expected one of {}",
                    CONFIG_KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies a flat `key=value` text. Blank lines and `#` comments are skipped.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", n + 1)))?;
            self.set(key, value).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", n + 1)),
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.apply_kv(&text)
    }

    /// Checks every field and reports all offending ones at once.
    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if self.horizon < 1 {
            bad.push(FieldError::new("T", "must be at least 1"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            bad.push(FieldError::new(
                "delta",
                format!("must lie in (0, 1), got {}", self.delta),
            ));
        }
        if self.trials < 1 {
            bad.push(FieldError::new("trials", "must be at least 1"));
        }
        if !(self.c1 > 1.0 && self.c1.is_finite()) {
            bad.push(FieldError::new(
                "c1",
                format!("must exceed 1, got {}", self.c1),
            ));
        }
        if !(self.c2 > 1.0 && self.c2.is_finite()) {
            bad.push(FieldError::new(
                "c2",
                format!("must exceed 1, got {}", self.c2),
            ));
        }
        if self.noise == NoiseChoice::Gaussian && !(self.sigma > 0.0 && self.sigma.is_finite()) {
            bad.push(FieldError::new(
                "sigma",
                format!("must be positive, got {}", self.sigma),
            ));
        }
        if self.algorithm.uses_bounded_variance() && self.noise != NoiseChoice::Gaussian {
            bad.push(FieldError::new(
                "noise",
                format!("{} needs gaussian noise", self.algorithm),
            ));
        }
        if self.grid_resolution == Some(0) {
            bad.push(FieldError::new("grid_resolution", "must be at least 1"));
        }
        if let Some(n) = self.grid_resolution {
            if self.reward.dimension() == 2 && n > 4096 {
                bad.push(FieldError::new(
                    "grid_resolution",
                    "at most 4096 per axis in 2-d",
                ));
            }
        }
        if self.checkpoint_every == Some(0) {
            bad.push(FieldError::new("checkpoint_every", "must be at least 1"));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidFields(bad))
        }
    }

    /// `key=value` lines that [`apply_kv`](Self::apply_kv) reads back to `self`.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        line("algorithm", self.algorithm.to_string());
        line("reward", self.reward.to_string());
        line("noise", self.noise.to_string());
        line("sigma", self.sigma.to_string());
        line("T", self.horizon.to_string());
        line("delta", self.delta.to_string());
        line("trials", self.trials.to_string());
        line("master-seed", self.master_seed.to_string());
        line("c1", self.c1.to_string());
        line("c2", self.c2.to_string());
        line(
            "grid-resolution",
            self.effective_grid_resolution().to_string(),
        );
        line("qmc-mode", self.qmc_mode.to_string());
        line("fault-injection", self.fault_injection.to_string());
        line(
            "checkpoint-every",
            self.effective_checkpoint_every().to_string(),
        );
        line("audits", self.audits.to_string());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.as_str().parse::<Algorithm>().unwrap(), *a);
        }
        for r in RewardChoice::ALL {
            assert_eq!(r.as_str().parse::<RewardChoice>().unwrap(), *r);
        }
        assert!("quantum".parse::<Algorithm>().is_err());
    }

    #[test]
    fn defaults_follow_experiment_setup() {
        let c = ExperimentConfig::default();
        assert_eq!(c.horizon, 300_000);
        assert_eq!(c.trials, 30);
        assert!((c.sigma * c.sigma - 0.1).abs() < 1e-15);
        assert!(c.fault_injection);
        assert_eq!(c.effective_checkpoint_every(), 3_000);
        assert_eq!(c.effective_grid_resolution(), 512);
        let c2 = ExperimentConfig {
            reward: RewardChoice::TwoDim,
            ..c
        };
        assert_eq!(c2.effective_grid_resolution(), 64);
        assert_eq!(c2.metric(), Metric::l_infinity(2).unwrap());
    }

    #[test]
    fn validation_names_every_bad_field() {
        let c = ExperimentConfig {
            horizon: 0,
            delta: 1.5,
            trials: 0,
            ..Default::default()
        };
        match c.validate().unwrap_err() {
            Error::InvalidFields(fields) => {
                let names: Vec<&str> = fields.iter().map(|f| f.field.as_str()).collect();
                assert_eq!(names, ["T", "delta", "trials"]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let bv = ExperimentConfig {
            algorithm: Algorithm::QlaeBv,
            ..Default::default()
        };
        assert!(bv.validate().is_err());
        assert!(ExperimentConfig::default().validate().is_ok());
    }

    #[test]
    fn kv_round_trip() {
        let mut c = ExperimentConfig::default();
        c.apply_kv(
            "# desk scale\nalgorithm = qlae_bv\nnoise=gaussian\nT=50000\nmaster_seed=7\n\nfault-injection=false\n",
        )
        .unwrap();
        assert_eq!(c.algorithm, Algorithm::QlaeBv);
        assert_eq!(c.horizon, 50_000);
        assert_eq!(c.master_seed, 7);
        assert!(!c.fault_injection);
        let mut back = ExperimentConfig::default();
        back.apply_kv(&c.to_kv()).unwrap();
        assert_eq!(back.to_kv(), c.to_kv());
    }

    #[test]
    fn kv_errors_carry_line_numbers() {
        let mut c = ExperimentConfig::default();
        let err = c.apply_kv("T=10\nbogus=1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(c.apply_kv("T").is_err());
        assert!(c.apply_kv("T=ten").is_err());
    }

    #[test]
    fn gaussian_maps_to_bounded_variance() {
        assert_eq!(
            Algorithm::Qlae.for_noise(NoiseChoice::Gaussian),
            Algorithm::QlaeBv
        );
        assert_eq!(
            Algorithm::QzoomingBv.for_noise(NoiseChoice::Bernoulli),
            Algorithm::Qzooming
        );
        assert_eq!(
            Algorithm::ClassicalZooming.for_noise(NoiseChoice::Gaussian),
            Algorithm::ClassicalZooming
        );
    }
}
