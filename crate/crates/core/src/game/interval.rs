use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numerics::rational::{fmt_rational, serde_rational};
use crate::numerics::{cmp_rat, Rational};
use num_traits::{Signed, Zero};
use std::cmp::Ordering::{Greater, Less};

use super::GameError;

/// Closed interval `[lo, hi]` with rational endpoints and `lo < hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    #[serde(with = "serde_rational")]
    lo: Rational,
    #[serde(with = "serde_rational")]
    hi: Rational,
}

impl TryFrom<RawInterval> for Interval {
    type Error = GameError;
    fn try_from(raw: RawInterval) -> Result<Self, GameError> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl From<Interval> for RawInterval {
    fn from(iv: Interval) -> Self {
        RawInterval {
            lo: iv.lo,
            hi: iv.hi,
        }
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, GameError> {
        if cmp_rat(&lo, &hi) != Less {
            return Err(GameError::DegenerateInterval {
                lo: fmt_rational(&lo),
                hi: fmt_rational(&hi),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// The interval of the given positive length centered at `center`.
    pub fn centered(center: &Rational, length: &Rational) -> Result<Self, GameError> {
        let half = length / Rational::from_integer(2.into());
        Interval::new(center - &half, center + half)
    }

    /// The interval of the given positive length starting at `lo`.
    pub fn from_lo(lo: Rational, length: &Rational) -> Result<Self, GameError> {
        let hi = &lo + length;
        Interval::new(lo, hi)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn center(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// Closed containment of `other` in `self`.
    pub fn contains(&self, other: &Interval) -> bool {
        cmp_rat(&self.lo, &other.lo) != Greater && cmp_rat(&other.hi, &self.hi) != Greater
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        cmp_rat(&self.lo, x) != Greater && cmp_rat(x, &self.hi) != Greater
    }

    /// Image under `x ↦ a·x + b`; `a` must be nonzero.
    pub fn affine(&self, a: &Rational, b: &Rational) -> Interval {
        assert!(!a.is_zero(), "affine map must be invertible");
        let (x, y) = (a * &self.lo + b, a * &self.hi + b);
        if a.is_negative() {
            Interval { lo: y, hi: x }
        } else {
            Interval { lo: x, hi: y }
        }
    }

    pub fn translate(&self, d: &Rational) -> Interval {
        Interval {
            lo: &self.lo + d,
            hi: &self.hi + d,
        }
    }

    pub fn scale(&self, f: &Rational) -> Interval {
        self.affine(f, &Rational::zero())
    }

    pub fn negate(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// The concentric subinterval of the given length.
    pub fn concentric(&self, length: &Rational) -> Result<Interval, GameError> {
        Interval::centered(&self.center(), length)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            fmt_rational(&self.lo),
            fmt_rational(&self.hi)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn basic_geometry() {
        let i = iv((3, 8), (7, 16));
        assert_eq!(i.length(), rat(1, 16));
        assert_eq!(i.center(), rat(13, 32));
        assert!(i.contains(&i));
        assert!(iv((0, 1), (1, 1)).contains(&i));
        assert!(!i.contains(&iv((0, 1), (1, 1))));
        assert!(Interval::new(rat(1, 2), rat(1, 2)).is_err());
    }

    #[test]
    fn affine_images() {
        let i = iv((0, 1), (1, 2));
        assert_eq!(i.affine(&rat(-2, 1), &rat(1, 1)), iv((0, 1), (1, 1)));
        assert_eq!(i.negate(), iv((-1, 2), (0, 1)));
        assert_eq!(i.scale(&rat(8, 1)), iv((0, 1), (4, 1)));
        assert_eq!(i.concentric(&rat(1, 4)).unwrap(), iv((1, 8), (3, 8)));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let i = iv((-3, 8), (1, 2));
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"lo":{"n":"-3","d":"8"},"hi":{"n":"1","d":"2"}}"#);
        assert_eq!(serde_json::from_str::<Interval>(&s).unwrap(), i);
        let bad = r#"{"lo":{"n":"1","d":"2"},"hi":{"n":"1","d":"2"}}"#;
        assert!(serde_json::from_str::<Interval>(bad).is_err());
    }
}
