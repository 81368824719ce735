//! Enumeration budget shared by the exhaustive search routines.
//!
//! Every combinatorial loop that can blow up (oracle enumeration, branch
//! exploration, permutation search) ticks a shared counter. Exceeding the
//! cap surfaces as an explicit error, never as a silently truncated result.

use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

/// Default node cap when `TROPDIFF_BUDGET` is not set.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Environment variable overriding the node cap.
pub const BUDGET_ENV: &str = "TROPDIFF_BUDGET";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("search truncated: enumeration exceeded budget of {limit} nodes")]
pub struct Truncated {
    pub limit: u64,
}

/// Shared node counter with a hard cap. Thread-safe so parallel shards can
/// tick the same budget.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    /// Reads the cap from `TROPDIFF_BUDGET`, falling back to the default.
    pub fn from_env() -> Self {
        let limit = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.parse::<u64>().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    /// Charges `n` nodes against the budget.
    pub fn tick(&self, n: u64) -> Result<(), Truncated> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            Err(Truncated { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_until_cap() {
        let b = Budget::new(10);
        assert!(b.tick(4).is_ok());
        assert!(b.tick(6).is_ok());
        assert!(b.tick(1).is_err());
    }
}
