//! Finite-horizon certificates over transcripts: determined digits,
//! frequency statistics, approximation scans and invariant rechecks.

mod approx;
mod ba_check;
mod digits;
mod shift_check;

use serde::Serialize;

pub use approx::{
    bba_scan, default_depth_max, distance, j_n_hit, MembershipStatus, MembershipVerdict,
    Neighborhood, ScanReport, Violation, Witness, MAX_LISTED,
};
pub use ba_check::{ba_invariant_check, dyadic_level, BaReport, BaRound, BaViolation};
pub use digits::{binary_digit, digit_prefix, freq_stats, freq_stats_from, DigitPrefix, FreqStats};
pub use shift_check::{density_zero_shift_check, ShiftDepth, ShiftReport};

use crate::game::{outcome_interval, Transcript};
use crate::numerics::rational::fmt_rational;
use crate::numerics::{rat, Rational};
use num_traits::Zero;

/// Target sets with a finite-horizon analysis, plus two diagram-only sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSet {
    /// `{x : d⁺(x, 0) > c}`.
    DPlus { c: Rational },
    /// `{x : d⁻(x, 0) > c}`.
    DMinus { c: Rational },
    /// `{x : |x − m/B^k| > c/B^k for all m and k ≥ 1}`.
    Bba { base: u32, c: Rational },
    /// As [`TargetSet::Bba`], restricted to levels `k > n`.
    BbaTail { base: u32, c: Rational, n: i64 },
    /// `Bba` in base 2.
    Ba { c: Rational },
    /// `{x : |x − m/3^k| ≥ 1/(6·3^k) for all m and k ≥ 1}`.
    ThreeBaSixth,
    /// A set whose diagram is exactly `{β > α}`; diagram use only.
    ReferenceS,
    /// Any set; only the trivial zones apply. Diagram use only.
    Generic,
}

impl TargetSet {
    pub fn validate(&self) -> Result<(), String> {
        let positive = |c: &Rational| {
            if c > &Rational::zero() {
                Ok(())
            } else {
                Err(format!("c must be positive, got {}", fmt_rational(c)))
            }
        };
        match self {
            TargetSet::DPlus { c } | TargetSet::DMinus { c } | TargetSet::Ba { c } => positive(c),
            TargetSet::Bba { base, c } | TargetSet::BbaTail { base, c, .. } => {
                if *base < 2 {
                    return Err(format!("base must be at least 2, got {base}"));
                }
                positive(c)
            }
            TargetSet::ThreeBaSixth | TargetSet::ReferenceS | TargetSet::Generic => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            TargetSet::DPlus { c } => format!("dplus(c={})", fmt_rational(c)),
            TargetSet::DMinus { c } => format!("dminus(c={})", fmt_rational(c)),
            TargetSet::Bba { base, c } => format!("bba(B={base},c={})", fmt_rational(c)),
            TargetSet::BbaTail { base, c, n } => {
                format!("bba-tail(B={base},c={},N={n})", fmt_rational(c))
            }
            TargetSet::Ba { c } => format!("ba(c={})", fmt_rational(c)),
            TargetSet::ThreeBaSixth => "3ba-sixth".into(),
            TargetSet::ReferenceS => "reference-s".into(),
            TargetSet::Generic => "generic".into(),
        }
    }

    /// `(B, c, first level, neighborhood kind)` for the approximation sets.
    pub fn approximation(&self) -> Option<(u32, Rational, i64, Neighborhood)> {
        match self {
            TargetSet::Bba { base, c } => Some((*base, c.clone(), 1, Neighborhood::Closed)),
            TargetSet::BbaTail { base, c, n } => {
                Some((*base, c.clone(), (n + 1).max(1), Neighborhood::Closed))
            }
            TargetSet::Ba { c } => Some((2, c.clone(), 1, Neighborhood::Closed)),
            TargetSet::ThreeBaSixth => Some((3, rat(1, 6), 1, Neighborhood::Open)),
            _ => None,
        }
    }
}

/// The analysis attached to a played game.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind")]
pub enum TargetReport {
    /// Frequencies are tail properties: this is a statistical estimate,
    /// never a membership verdict.
    Frequency {
        target: String,
        prefix: DigitPrefix,
        stats: FreqStats,
    },
    Scan {
        target: String,
        scan: ScanReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        ba_invariant: Option<BaReport>,
    },
    NoCertificate {
        target: String,
    },
}

/// Analysis of the outcome interval of `t` against `target`.
pub fn analyze(t: &Transcript, target: &TargetSet) -> TargetReport {
    let label = target.label();
    let Some(last) = outcome_interval(t) else {
        return TargetReport::NoCertificate { target: label };
    };
    match target {
        TargetSet::DPlus { .. } | TargetSet::DMinus { .. } => {
            let prefix = digit_prefix(last, 2);
            let stats = freq_stats(&prefix.digits);
            TargetReport::Frequency {
                target: label,
                prefix,
                stats,
            }
        }
        TargetSet::ReferenceS | TargetSet::Generic => TargetReport::NoCertificate { target: label },
        _ => {
            let (base, c, first, kind) = target.approximation().expect("approximation set");
            let depth_max = default_depth_max(last, base).max(first);
            let scan = bba_scan(last, base, &c, first, depth_max, kind);
            let ba_invariant =
                matches!(target, TargetSet::Ba { .. }).then(|| ba_invariant_check(t, &c));
            TargetReport::Scan {
                target: label,
                scan,
                ba_invariant,
            }
        }
    }
}
