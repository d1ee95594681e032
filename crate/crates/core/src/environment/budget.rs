//! Query budgets of the two QMC mean estimators.
//!
//! `QMC1` (rewards in `[0,1]`) needs `C1/eps * ln(1/delta)` queries.
//! `QMC2` (variance at most `sigma^2`, valid for `eps < 4 sigma`) needs
//! `C2 sigma/eps * log2^{3/2}(8 sigma/eps) * log2(log2(8 sigma/eps)) * ln(1/delta)`.
//! Both log2 factors are clamped below at 1.

use crate::error::{Error, Result};

fn check_common(eps: f64, delta: f64, c: f64, name: &str) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Config(format!("eps must be positive, got {eps}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Config(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::Config(format!("{name} must exceed 1, got {c}")));
    }
    Ok(())
}

fn to_budget(raw: f64) -> u64 {
    (raw.ceil() as u64).max(1)
}

/// Query count of the bounded-noise estimator.
pub fn qmc1_budget(eps: f64, delta: f64, c1: f64) -> Result<u64> {
    check_common(eps, delta, c1, "c1")?;
    if eps > 1.0 {
        return Err(Error::Config(format!("eps must not exceed 1, got {eps}")));
    }
    Ok(to_budget(c1 / eps * (1.0 / delta).ln()))
}

/// Query count of the bounded-variance estimator. Requires `eps < 4 sigma`.
pub fn qmc2_budget(eps: f64, sigma: f64, delta: f64, c2: f64) -> Result<u64> {
    check_common(eps, delta, c2, "c2")?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Config(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    if eps >= 4.0 * sigma {
        return Err(Error::Config(format!(
            "bounded-variance estimator needs eps < 4 sigma (eps = {eps}, sigma = {sigma})"
        )));
    }
    let log_ratio = (8.0 * sigma / eps).log2().max(1.0);
    let log_log = log_ratio.log2().max(1.0);
    Ok(to_budget(
        c2 * sigma / eps * log_ratio.powf(1.5) * log_log * (1.0 / delta).ln(),
    ))
}

/// Which QMC accuracy contract an oracle honours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QmcContract {
    Bounded {
        c1: f64,
    },
    /// Falls back to the bounded budget (with constant `c2`) when `eps >= 4 sigma`.
    BoundedVariance {
        c2: f64,
        sigma: f64,
    },
}

impl QmcContract {
    pub fn budget(&self, eps: f64, delta: f64) -> Result<u64> {
        match *self {
            QmcContract::Bounded { c1 } => qmc1_budget(eps, delta, c1),
            QmcContract::BoundedVariance { c2, sigma } => {
                if eps >= 4.0 * sigma {
                    qmc1_budget(eps, delta, c2)
                } else {
                    qmc2_budget(eps, sigma, delta, c2)
                }
            }
        }
    }
}
