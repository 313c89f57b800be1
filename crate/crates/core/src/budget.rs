//! Resource caps for the long-running enumerations.

use std::time::{Duration, Instant};

use crate::{Error, Result};

/// Environment variable holding the default time budget in seconds.
pub const TIME_BUDGET_ENV: &str = "HYPERCOEF_TIME_BUDGET";

#[derive(Clone, Debug, Default)]
pub struct Budget {
    deadline: Option<(Instant, Duration)>,
    max_classes: Option<usize>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.deadline = Some((Instant::now() + limit, limit));
        self
    }

    pub fn with_max_classes(mut self, max: usize) -> Self {
        self.max_classes = Some(max);
        self
    }

    /// Reads [`TIME_BUDGET_ENV`]; unset or unparsable means unlimited.
    pub fn from_env() -> Self {
        match std::env::var(TIME_BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
        {
            Some(secs) if secs > 0.0 => Self::default().with_time(Duration::from_secs_f64(secs)),
            _ => Self::default(),
        }
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some((deadline, limit)) if Instant::now() > deadline => {
                Err(Error::BudgetExhausted(limit))
            }
            _ => Ok(()),
        }
    }

    pub fn check_classes(&self, count: usize) -> Result<()> {
        match self.max_classes {
            Some(max) if count > max => Err(Error::ClassBudgetExhausted(max)),
            _ => Ok(()),
        }
    }
}
