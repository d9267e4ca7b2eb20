//! Rate regions, exact code verification and numeric oracles for the
//! two-receiver broadcast channel with receiver side information and an
//! eavesdropper, under individual and joint secrecy.
//!
//! All information quantities are in bits.

pub mod codesim;
pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod info;
pub mod lindet;
pub mod markov;
pub mod regions;
pub mod sampling;

pub use error::{Error, Result};
pub use geometry::{RatePair, RateRegion};
pub use info::{DmcChannel, Pmf};
pub use markov::MarkovSpec;

/// Tolerance used for region membership and information-inequality checks.
pub const TOL: f64 = 1e-9;

/// Enumeration budget shared by the exhaustive evaluators (outcomes visited).
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// Budget override from `BCRSI_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("BCRSI_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
