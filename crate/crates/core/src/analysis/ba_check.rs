//! Recheck of the dyadic-avoidance invariant maintained by Alice's
//! badly-approximable targeting strategy.

use num_bigint::BigInt;
use serde::Serialize;

use super::approx::distance;
use crate::game::{Interval, Transcript};
use crate::numerics::rational::{ceil_int, floor_int, pow_int, serde_rational, serde_rational_opt};
use crate::numerics::Rational;

/// Smallest `q ≥ 0` such that some `m/2^q` lies in `iv`.
pub fn dyadic_level(iv: &Interval) -> i64 {
    let mut q = 0;
    loop {
        let scale = pow_int(2, q);
        if ceil_int(&(iv.lo() * &scale)) <= floor_int(&(iv.hi() * &scale)) {
            return q;
        }
        q += 1;
    }
}

/// The level-`n` dyadics closest to `iv` from each side (or inside it).
fn nearest_dyadics(iv: &Interval, n: i64) -> [BigInt; 2] {
    let scale = pow_int(2, n);
    [
        floor_int(&(iv.lo() * &scale)),
        ceil_int(&(iv.hi() * &scale)),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaViolation {
    pub round: usize,
    pub n: i64,
    pub m: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaRound {
    /// Index `i` of the checked move `A_i`.
    pub round: usize,
    pub q: i64,
    /// `min_n (dist(A_i, nearest m/2^n) − c/2^n)` over `1 ≤ n ≤ q − 2`;
    /// `None` when that range is empty.
    #[serde(with = "serde_rational_opt")]
    pub margin: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaReport {
    #[serde(with = "serde_rational")]
    pub c: Rational,
    pub rounds: Vec<BaRound>,
    pub violations: Vec<BaViolation>,
}

impl BaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every Alice move `A_i`, checks `|x − m/2^n| > c/2^n` for all
/// `x ∈ A_i`, all `m` and `1 ≤ n ≤ q_i − 2`, exactly.
pub fn ba_invariant_check(t: &Transcript, c: &Rational) -> BaReport {
    let mut rounds = Vec::new();
    let mut violations = Vec::new();
    let mut i = 0;
    while let Some(a) = t.alice(i) {
        let q = dyadic_level(a);
        let mut margin: Option<Rational> = None;
        for n in 1..=q - 2 {
            let unit = pow_int(2, -n);
            let radius = c * &unit;
            for m in nearest_dyadics(a, n) {
                let d = distance(a, &(Rational::from_integer(m.clone()) * &unit)) - &radius;
                if d <= Rational::from_integer(0.into()) {
                    violations.push(BaViolation {
                        round: i,
                        n,
                        m: m.to_string(),
                    });
                }
                if margin.as_ref().is_none_or(|g| &d < g) {
                    margin = Some(d);
                }
            }
        }
        rounds.push(BaRound {
            round: i,
            q,
            margin,
        });
        i += 1;
    }
    BaReport {
        c: c.clone(),
        rounds,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameParams;
    use crate::numerics::rat;

    #[test]
    fn dyadic_levels() {
        let iv = |a, b| Interval::new(a, b).unwrap();
        assert_eq!(dyadic_level(&iv(rat(1, 15), rat(4, 15))), 2);
        assert_eq!(dyadic_level(&iv(rat(-1, 3), rat(1, 3))), 0);
        assert_eq!(dyadic_level(&iv(rat(1, 3), rat(2, 5))), 3);
    }

    #[test]
    fn empty_transcript_gives_empty_report() {
        let p = GameParams::new(rat(1, 5), rat(1, 2)).unwrap();
        let r = ba_invariant_check(&Transcript::new(p), &rat(1, 50));
        assert!(r.rounds.is_empty() && r.passed());
    }

    #[test]
    fn interval_near_a_coarse_dyadic_is_flagged() {
        // A_0 = [1/2 + 1/300, 1/2 + 1/300 + 1/5000] first meets a dyadic at
        // level 11, yet lies within c/2 of 1/2.
        let p = GameParams::new(rat(1, 5000), rat(1, 2)).unwrap();
        let lo = rat(1, 2) + rat(1, 300);
        let a0 = Interval::from_lo(lo.clone(), &rat(1, 5000)).unwrap();
        let t = Transcript::from_intervals(
            p,
            [Interval::new(rat(0, 1), rat(1, 1)).unwrap(), a0.clone()],
        )
        .unwrap();
        let r = ba_invariant_check(&t, &rat(1, 50));
        assert_eq!(r.rounds[0].q, 11);
        assert!(!r.passed());
        assert_eq!(
            r.violations[0],
            BaViolation {
                round: 0,
                n: 1,
                m: "1".into()
            }
        );
    }
}
