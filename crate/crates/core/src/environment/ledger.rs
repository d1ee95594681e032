/// Cumulative regret after a given number of played rounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub round: u64,
    pub cumulative_regret: f64,
}

/// Regret checkpoints of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace {
    pub run_id: u64,
    pub checkpoints: Vec<Checkpoint>,
}

impl RegretTrace {
    pub fn final_regret(&self) -> f64 {
        self.checkpoints.last().map_or(0.0, |c| c.cumulative_regret)
    }

    pub fn final_round(&self) -> u64 {
        self.checkpoints.last().map_or(0, |c| c.round)
    }
}

/// Accounting of played rounds against the horizon.
///
/// Every oracle query is one played round charged the gap of the queried
/// arm. Checkpoints are emitted at every multiple of `checkpoint_every`,
/// including multiples that fall inside a long multi-round call.
#[derive(Debug, Clone)]
pub struct RoundLedger {
    horizon: u64,
    consumed: u64,
    cumulative_regret: f64,
    checkpoint_every: u64,
    checkpoints: Vec<Checkpoint>,
}

impl RoundLedger {
    /// `checkpoint_every` of zero is treated as one.
    pub fn new(horizon: u64, checkpoint_every: u64) -> Self {
        Self {
            horizon,
            consumed: 0,
            cumulative_regret: 0.0,
            checkpoint_every: checkpoint_every.max(1),
            checkpoints: Vec::new(),
        }
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn remaining(&self) -> u64 {
        self.horizon - self.consumed
    }

    pub fn is_exhausted(&self) -> bool {
        self.consumed >= self.horizon
    }

    pub fn cumulative_regret(&self) -> f64 {
        self.cumulative_regret
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    /// Plays up to `requested` rounds at per-round regret `gap`.
    /// Returns the number of rounds actually played.
    pub fn charge(&mut self, requested: u64, gap: f64) -> u64 {
        debug_assert!(gap >= 0.0, "negative gap {gap}");
        let used = requested.min(self.remaining());
        if used == 0 {
            return 0;
        }
        let start = self.consumed;
        let base = self.cumulative_regret;
        let every = self.checkpoint_every;
        let mut next = (start / every + 1) * every;
        while next <= start + used {
            self.checkpoints.push(Checkpoint {
                round: next,
                cumulative_regret: base + (next - start) as f64 * gap,
            });
            next += every;
        }
        self.consumed += used;
        self.cumulative_regret = base + used as f64 * gap;
        used
    }

    /// Closes the run, adding a final checkpoint at `consumed` if needed.
    pub fn into_trace(mut self, run_id: u64) -> RegretTrace {
        let last = self.checkpoints.last().map_or(0, |c| c.round);
        if self.consumed > last {
            self.checkpoints.push(Checkpoint {
                round: self.consumed,
                cumulative_regret: self.cumulative_regret,
            });
        }
        RegretTrace {
            run_id,
            checkpoints: self.checkpoints,
        }
    }
}
