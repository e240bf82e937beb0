//! Exact rational arithmetic and rigorous decision procedures for the
//! logarithm and fractional-part comparisons that strategies rely on.

mod log;
pub mod rational;
mod schedule;

use thiserror::Error;

pub use log::{
    approx, ceil_log, eval_log, eval_log_with, floor_log, is_log_rational, log_sum_sign, Enclosure,
    LogExpr, Precision,
};
pub use rational::{cmp_rat, parse_rational, rat, Rational};
pub use schedule::{first_window_hit, first_window_hit_with};

pub const DEFAULT_START_BITS: u32 = 64;
pub const DEFAULT_CAP_BITS: u32 = 16384;
/// Environment variable that overrides [`DEFAULT_CAP_BITS`].
pub const PRECISION_CAP_ENV: &str = "SCHMIDT_PRECISION_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("equidistribution hypothesis violated: log_{base}({argument}) is rational")]
    EquidistributionViolated { base: u32, argument: String },
    #[error("precision cap of {bits} bits reached{}", .t.map(|t| format!(" at t = {t}")).unwrap_or_default())]
    PrecisionCap { t: Option<u64>, bits: u32 },
    #[error("window not hit within {steps} steps")]
    SearchLimit { steps: u64 },
}

/// Precision escalation policy: start at `start_bits`, double on every
/// undecided comparison, give up past `cap_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Escalation {
    pub start_bits: u32,
    pub cap_bits: u32,
    /// Upper bound on the number of indices a window search may scan.
    pub max_steps: u64,
}

impl Default for Escalation {
    fn default() -> Self {
        Escalation {
            start_bits: DEFAULT_START_BITS,
            cap_bits: DEFAULT_CAP_BITS,
            max_steps: 50_000_000,
        }
    }
}

impl Escalation {
    /// Default policy with the cap taken from `SCHMIDT_PRECISION_CAP` when set.
    pub fn from_env() -> Result<Self, NumericsError> {
        let mut esc = Escalation::default();
        if let Ok(v) = std::env::var(PRECISION_CAP_ENV) {
            let cap: u32 = v.trim().parse().map_err(|_| {
                NumericsError::Parse(format!("{PRECISION_CAP_ENV}={v:?} is not a bit count"))
            })?;
            if cap < esc.start_bits {
                return Err(NumericsError::Domain(format!(
                    "{PRECISION_CAP_ENV} must be at least {} bits",
                    esc.start_bits
                )));
            }
            esc.cap_bits = cap;
        }
        Ok(esc)
    }
}
