//! Determined digit prefixes and running digit frequencies.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::game::Interval;
use crate::numerics::rational::{floor_int, serde_rational_opt};
use crate::numerics::Rational;

/// Digits shared by every point of an interval: the integer part and the
/// fractional digits of the deepest closed cell `[j/b^n, (j+1)/b^n]`
/// containing it.
///
/// A point on a cell boundary has an expansion ending in zeros and one
/// ending in `b−1`s; closed cells let each point use whichever expansion
/// agrees with the cell, so a closed move starting at a dyadic point is
/// credited with the digits of the cell it starts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitPrefix {
    /// `None` when the interval is not inside a single unit cell.
    #[serde(serialize_with = "ser_opt_bigint")]
    pub integer: Option<BigInt>,
    pub digits: Vec<u8>,
}

fn ser_opt_bigint<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref().map(|b| b.to_string()).serialize(s)
}

impl DigitPrefix {
    pub fn digit_string(&self) -> String {
        self.digits
            .iter()
            .map(|d| char::from_digit(*d as u32, 36).expect("digit < 36"))
            .collect()
    }
}

pub fn digit_prefix(iv: &Interval, base: u32) -> DigitPrefix {
    assert!((2..=36).contains(&base), "base must be in 2..=36");
    let b = BigInt::from(base);
    let j0 = floor_int(iv.lo());
    if Rational::from_integer(&j0 + 1u32) < *iv.hi() {
        return DigitPrefix {
            integer: None,
            digits: Vec::new(),
        };
    }
    let mut digits = Vec::new();
    let (mut lo, mut hi) = (iv.lo().clone(), iv.hi().clone());
    let mut j = j0.clone();
    loop {
        lo *= Rational::from_integer(b.clone());
        hi *= Rational::from_integer(b.clone());
        let next = floor_int(&lo);
        if Rational::from_integer(&next + 1u32) < hi {
            break;
        }
        let d = &next - &j * &b;
        digits.push(d.to_u8().expect("digit below base"));
        j = next;
    }
    DigitPrefix {
        integer: Some(j0),
        digits,
    }
}

/// Running zero-digit frequencies of a finite digit sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreqStats {
    pub prefix_digits: String,
    /// `zero_counts[k-1] = #{1 ≤ i ≤ k : x_i = 0}`.
    pub zero_counts: Vec<u64>,
    pub k_min: usize,
    /// Minimum of the running frequency over `k ≥ k_min`.
    #[serde(with = "serde_rational_opt")]
    pub dminus_estimate: Option<Rational>,
    /// Maximum of the running frequency over `k ≥ k_min`.
    #[serde(with = "serde_rational_opt")]
    pub dplus_estimate: Option<Rational>,
    /// Frequency over the whole sequence.
    #[serde(with = "serde_rational_opt")]
    pub final_frequency: Option<Rational>,
}

pub fn freq_stats(digits: &[u8]) -> FreqStats {
    freq_stats_from(digits, 1)
}

/// [`freq_stats`] with the running window starting at `k_min ≥ 1`.
pub fn freq_stats_from(digits: &[u8], k_min: usize) -> FreqStats {
    let k_min = k_min.max(1);
    let mut zero_counts = Vec::with_capacity(digits.len());
    let mut zeros = 0u64;
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    for (i, d) in digits.iter().enumerate() {
        if *d == 0 {
            zeros += 1;
        }
        zero_counts.push(zeros);
        let k = i + 1;
        if k >= k_min {
            let f = Rational::new(zeros.into(), (k as u64).into());
            if lo.as_ref().is_none_or(|l| &f < l) {
                lo = Some(f.clone());
            }
            if hi.as_ref().is_none_or(|h| &f > h) {
                hi = Some(f);
            }
        }
    }
    let final_frequency =
        (!digits.is_empty()).then(|| Rational::new(zeros.into(), (digits.len() as u64).into()));
    FreqStats {
        prefix_digits: digits
            .iter()
            .map(|d| char::from_digit(*d as u32, 36).unwrap_or('?'))
            .collect(),
        zero_counts,
        k_min,
        dminus_estimate: lo,
        dplus_estimate: hi,
        final_frequency,
    }
}

/// Digit `i ≥ 1` of the greedy base-2 expansion `x = ⌊x⌋ + Σ x_i 2^{-i}`.
pub fn binary_digit(x: &Rational, i: u32) -> u8 {
    let two = Rational::from_integer(2.into());
    let hi = floor_int(&(x * num_traits::pow(two.clone(), i as usize)));
    let lo = floor_int(&(x * num_traits::pow(two, i as usize - 1)));
    let d: BigInt = hi - lo * 2;
    debug_assert!(d >= BigInt::zero());
    d.to_u8().expect("binary digit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;
    use proptest::prelude::*;

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::new(a, b).unwrap()
    }

    /// Deepest closed cell by exhaustive search over cell indices.
    fn oracle_depth(x: &Interval, base: i64, max_depth: u32) -> usize {
        let mut depth = 0;
        for n in 1..=max_depth {
            let scale = rat(base.pow(n), 1);
            let found = (-(3 * base.pow(n))..(3 * base.pow(n))).any(|j| {
                let (a, b) = (rat(j, 1) / &scale, rat(j + 1, 1) / &scale);
                &a <= x.lo() && x.hi() <= &b
            });
            if !found {
                break;
            }
            depth = n as usize;
        }
        depth
    }

    #[test]
    fn prefix_examples() {
        let a = iv(rat(1, 4), rat(5, 16));
        let p = digit_prefix(&a, 2);
        assert_eq!(p.integer, Some(BigInt::zero()));
        assert_eq!(p.digit_string(), "0100");
        assert_eq!(oracle_depth(&a, 2, 8), 4);
        assert_eq!(
            digit_prefix(&iv(rat(0, 1), rat(1, 1)), 2).digit_string(),
            ""
        );
        assert_eq!(
            digit_prefix(&iv(rat(1, 9), rat(2, 9)), 3).digit_string(),
            "01"
        );
        assert_eq!(digit_prefix(&iv(rat(-1, 2), rat(1, 2)), 2).integer, None);
        let neg = digit_prefix(&iv(rat(-3, 4), rat(-5, 8)), 2);
        assert_eq!(
            (neg.integer.clone(), neg.digit_string()),
            (Some(BigInt::from(-1)), "010".to_string())
        );
    }

    #[test]
    fn frequencies() {
        let third: Vec<u8> = (1..=40).map(|i| binary_digit(&rat(1, 3), i)).collect();
        assert_eq!(third[..4], [0, 1, 0, 1]);
        let s = freq_stats(&third);
        assert_eq!(s.final_frequency, Some(rat(1, 2)));
        assert_eq!(s.dminus_estimate, Some(rat(1, 2)));
        assert_eq!(s.dplus_estimate, Some(rat(1, 1)));
        let zeros = freq_stats(&[0; 20]);
        assert_eq!(zeros.dminus_estimate, Some(rat(1, 1)));
        assert_eq!(freq_stats(&[]).final_frequency, None);
        assert_eq!(freq_stats_from(&third, 3).dplus_estimate, Some(rat(2, 3)));
    }

    proptest! {
        #[test]
        fn prefix_matches_oracle_and_refines(
            lo in -300i64..300, len in 1i64..200, cut in 0i64..100, shrink in 1i64..100,
        ) {
            let outer = iv(rat(lo, 256), rat(lo + len, 256));
            let inner_lo = rat(lo, 256) + rat(len * cut, 256 * 100);
            let inner_len = (rat(len, 256) - rat(len * cut, 256 * 100)) * rat(shrink, 100);
            let inner = Interval::from_lo(inner_lo, &inner_len).unwrap();
            let (p, q) = (digit_prefix(&outer, 2), digit_prefix(&inner, 2));
            if p.integer.is_some() {
                prop_assert_eq!(p.digits.len(), oracle_depth(&outer, 2, 10));
                prop_assert_eq!(&q.integer, &p.integer);
                prop_assert!(q.digits.starts_with(&p.digits));
            }
        }
    }
}
