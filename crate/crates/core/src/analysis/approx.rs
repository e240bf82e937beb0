//! Base-`B` rational approximation: forbidden neighborhoods of `m/B^k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::game::Interval;
use crate::numerics::rational::{ceil_int, floor_int, pow_int, round_half_down};
use crate::numerics::{ceil_log, Rational};

/// Whether the neighborhoods `|x − m/B^k| ≤ c/B^k` (`Closed`, for sets
/// defined by a strict `>`) or `|x − m/B^k| < c/B^k` (`Open`, for sets
/// defined by `≥`) are forbidden.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Neighborhood {
    Closed,
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MembershipStatus {
    /// Every point of the interval lies in a forbidden neighborhood.
    CertifiedOut,
    /// No point of the interval lies in any scanned forbidden neighborhood.
    ConsistentIn,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub k: i64,
    pub m: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub status: MembershipStatus,
    pub witness: Option<Witness>,
    pub depth_checked: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub k: i64,
    pub m: String,
    /// Whether every point of the interval is inside the neighborhood.
    pub total: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub base: u32,
    pub depth_min: i64,
    pub depth_max: i64,
    /// At most [`MAX_LISTED`] violations per level are listed.
    pub violations: Vec<Violation>,
    pub verdict: MembershipVerdict,
}

pub const MAX_LISTED: usize = 16;

/// Default deepest level worth scanning: `⌈−log_B |iv|⌉ + 8`.
pub fn default_depth_max(iv: &Interval, base: u32) -> i64 {
    ceil_log(base, &iv.length().recip()).expect("positive length") + 8
}

fn meets(iv: &Interval, a: &Rational, b: &Rational, kind: Neighborhood) -> bool {
    match kind {
        Neighborhood::Closed => iv.lo() <= b && iv.hi() >= a,
        Neighborhood::Open => iv.lo() < b && iv.hi() > a,
    }
}

fn inside(iv: &Interval, a: &Rational, b: &Rational, kind: Neighborhood) -> bool {
    match kind {
        Neighborhood::Closed => a <= iv.lo() && iv.hi() <= b,
        Neighborhood::Open => a < iv.lo() && iv.hi() < b,
    }
}

/// Scans levels `depth_min ..= depth_max` for neighborhoods of `m/B^k`
/// of radius `c/B^k` that meet or contain `iv`.
pub fn bba_scan(
    iv: &Interval,
    base: u32,
    c: &Rational,
    depth_min: i64,
    depth_max: i64,
    kind: Neighborhood,
) -> ScanReport {
    assert!(depth_min <= depth_max, "empty depth range");
    let mut violations = Vec::new();
    let mut witness = None;
    let mut partial = false;
    for k in depth_min..=depth_max {
        let scale = pow_int(base, k);
        let unit = pow_int(base, -k);
        let lo_s = iv.lo() * &scale;
        let hi_s = iv.hi() * &scale;
        let first = ceil_int(&(&lo_s - c));
        let last = floor_int(&(&hi_s + c));
        let nbhd = |m: &BigInt| {
            let mq = Rational::from_integer(m.clone());
            ((&mq - c) * &unit, (mq + c) * &unit)
        };
        // Only the nearest center can contain the whole interval.
        let nearest = round_half_down(&(iv.center() * &scale));
        let (a, b) = nbhd(&nearest);
        let total = inside(iv, &a, &b, kind);
        if total && witness.is_none() {
            witness = Some(Witness {
                k,
                m: nearest.to_string(),
            });
        }
        let mut m = first.clone();
        let mut listed = 0;
        while m <= last {
            let (a, b) = nbhd(&m);
            if meets(iv, &a, &b, kind) {
                partial = true;
                if listed < MAX_LISTED {
                    violations.push(Violation {
                        k,
                        m: m.to_string(),
                        total: m == nearest && total,
                    });
                    listed += 1;
                } else {
                    break;
                }
            }
            m += BigInt::one();
        }
    }
    let status = if witness.is_some() {
        MembershipStatus::CertifiedOut
    } else if partial {
        MembershipStatus::Undetermined
    } else {
        MembershipStatus::ConsistentIn
    };
    ScanReport {
        base,
        depth_min,
        depth_max,
        violations,
        verdict: MembershipVerdict {
            status,
            witness,
            depth_checked: depth_max,
        },
    }
}

/// The smallest `k` with `iv ⊆ (k/B^n − c/B^n, k/B^n + c/B^n)`, if any.
pub fn j_n_hit(iv: &Interval, base: u32, n: i64, c: &Rational) -> Option<BigInt> {
    let scale = pow_int(base, n);
    let k = floor_int(&(iv.hi() * &scale - c)) + BigInt::one();
    let kq = Rational::from_integer(k.clone());
    (kq < iv.lo() * &scale + c).then_some(k)
}

/// Distance from the interval to the point (zero if it contains it).
pub fn distance(iv: &Interval, x: &Rational) -> Rational {
    if x < iv.lo() {
        iv.lo() - x
    } else if x > iv.hi() {
        x - iv.hi()
    } else {
        Rational::zero()
    }
}
