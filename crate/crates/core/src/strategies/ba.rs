//! Alice's winning strategy for the dyadic badly approximable set `BA(c)`:
//! stay centered at third-points `(m ± 1/3)/2^k` of the current dyadic scale.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::common::{center_range, last_move, next_length, round_of};
use crate::analysis::dyadic_level;
use crate::game::{
    ensure_params, GameParams, Interval, Player, Side, Sides, Strategy, StrategyError,
    StrategyEvent, Transcript,
};
use crate::numerics::rational::{ceil_int, floor_int, fmt_rational, pow_int};
use crate::numerics::{floor_log, rat, Rational};

#[derive(Clone, Debug)]
pub struct BaTargeter {
    c: Rational,
    params: GameParams,
}

impl BaTargeter {
    /// `9c/(1−3α)`, the bound `β` must exceed.
    pub fn beta_threshold(c: &Rational, alpha: &Rational) -> Rational {
        rat(9, 1) * c / (rat(1, 1) - rat(3, 1) * alpha)
    }

    /// Requires `0 < c < 1/6`, `α < 1/3` and `β > 9c/(1−3α)`.
    pub fn new(c: Rational, params: GameParams) -> Result<Self, StrategyError> {
        let hyp = |m: String| Err(StrategyError::Hypothesis(m));
        if c <= Rational::zero() || c >= rat(1, 6) {
            return hyp(format!(
                "ba targeter needs 0 < c < 1/6, got {}",
                fmt_rational(&c)
            ));
        }
        if params.alpha() >= &rat(1, 3) {
            return hyp(format!(
                "ba targeter needs alpha < 1/3, got {}",
                fmt_rational(params.alpha())
            ));
        }
        let th = Self::beta_threshold(&c, params.alpha());
        if params.beta() <= &th {
            return hyp(format!(
                "ba targeter needs beta > 9c/(1-3a) = {}, got {}",
                fmt_rational(&th),
                fmt_rational(params.beta())
            ));
        }
        Ok(BaTargeter { c, params })
    }
}

/// `k` with `1/2^k < l ≤ 1/2^(k−1)`.
pub fn scale_index(l: &Rational) -> i64 {
    let n = floor_log(2, l).expect("positive length");
    if pow_int(2, n) == *l {
        1 - n
    } else {
        -n
    }
}

/// Centers `j/(3·2^k)`, `3 ∤ j`, in `[lo, hi]`, ascending.
pub fn third_points(lo: &Rational, hi: &Rational, k: i64) -> Vec<Rational> {
    let unit = pow_int(2, -k) / rat(3, 1);
    let (first, last) = (ceil_int(&(lo / &unit)), floor_int(&(hi / &unit)));
    let three = BigInt::from(3);
    let mut out = Vec::new();
    let mut j = first;
    while j <= last {
        if !j.is_multiple_of(&three) {
            out.push(Rational::from_integer(j.clone()) * &unit);
        }
        j += 1;
    }
    out
}

struct BaPlayer {
    c: Rational,
    events: Vec<StrategyEvent>,
}

impl Strategy for BaTargeter {
    fn name(&self) -> String {
        format!("ba-targeter:{}", fmt_rational(&self.c))
    }
    fn sides(&self) -> Sides {
        Sides::Alice
    }
    fn start(
        &self,
        params: &GameParams,
        _: Side,
        _: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_params(&self.params, params)?;
        Ok(Box::new(BaPlayer {
            c: self.c.clone(),
            events: Vec::new(),
        }))
    }
}

impl BaPlayer {
    /// Bounds `(max center, min center)` excluding the third-point closest to
    /// each threatening level-`(q−1)` dyadic of the previous move.
    fn case_two_bounds(
        &self,
        t: &Transcript,
        round: usize,
        b: &Interval,
        k: i64,
    ) -> Option<(Option<Rational>, Option<Rational>)> {
        let prev_a = t.alice(round.checked_sub(1)?)?;
        let prev_b = t.bob(round - 1)?;
        let q = dyadic_level(prev_a);
        let unit = pow_int(2, 1 - q);
        let alpha = t.params().alpha();
        if alpha * prev_b.length() / rat(2, 1) < (rat(1, 3) - &self.c) * &unit {
            return None;
        }
        let reach = &self.c * &unit;
        let skip = rat(2, 3) * pow_int(2, -k);
        let (mut upper, mut lower): (Option<Rational>, Option<Rational>) = (None, None);
        let first = floor_int(&((b.lo() - &reach) / &unit));
        let last = ceil_int(&((b.hi() + &reach) / &unit));
        let mut m = first;
        while m <= last {
            let d = Rational::from_integer(m.clone()) * &unit;
            m += 1;
            if &d + &reach < *b.lo() || &d - &reach > *b.hi() {
                continue;
            }
            if &d > b.hi() {
                let bound = &d - &skip;
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            } else if &d < b.lo() {
                let bound = &d + &skip;
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            }
        }
        Some((upper, lower))
    }
}

impl Player for BaPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let len =
            next_length(t).ok_or_else(|| StrategyError::Internal("Alice cannot open".into()))?;
        let b = last_move(t)?;
        let round = round_of(t);
        let k = scale_index(&b.length());
        let (lo, hi) = center_range(b, &len);
        let mut candidates = third_points(&lo, &hi, k);
        let bounds = self.case_two_bounds(t, round, b, k);
        if let Some((upper, lower)) = &bounds {
            candidates.retain(|c| {
                upper.as_ref().is_none_or(|u| c <= u) && lower.as_ref().is_none_or(|l| c >= l)
            });
        }
        let center = candidates.into_iter().next().ok_or_else(|| {
            StrategyError::Internal(format!("no admissible third-point center inside {b}"))
        })?;
        let mv = Interval::centered(&center, &len)?;
        self.events.push(StrategyEvent::BaChoice {
            round,
            k,
            q: dyadic_level(&mv),
            center,
            case_two: bounds.is_some(),
        });
        Ok(mv)
    }

    fn drain_events(&mut self) -> Vec<StrategyEvent> {
        std::mem::take(&mut self.events)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::ba_invariant_check;
    use crate::game::{play, play_logged};
    use crate::strategies::basic::Random;

    fn params() -> GameParams {
        GameParams::new(rat(1, 5), rat(1, 2)).unwrap()
    }

    #[test]
    fn hypotheses() {
        assert_eq!(
            BaTargeter::beta_threshold(&rat(1, 50), &rat(1, 5)),
            rat(9, 20)
        );
        assert!(BaTargeter::new(rat(1, 50), params()).is_ok());
        assert!(BaTargeter::new(rat(1, 6), params()).is_err());
        let low_beta = GameParams::new(rat(1, 5), rat(9, 20)).unwrap();
        assert!(BaTargeter::new(rat(1, 50), low_beta).is_err());
    }

    #[test]
    fn scale_and_candidates() {
        assert_eq!(scale_index(&rat(1, 1)), 1);
        assert_eq!(scale_index(&rat(3, 4)), 1);
        assert_eq!(scale_index(&rat(1, 2)), 2);
        let all = third_points(&rat(0, 1), &rat(1, 1), 1);
        assert_eq!(all, vec![rat(1, 6), rat(1, 3), rat(2, 3), rat(5, 6)]);
    }

    #[test]
    fn first_move_is_leftmost_third_point() {
        let s = BaTargeter::new(rat(1, 50), params()).unwrap();
        let t = play(&params(), &Random::default(), &s, 1, None, 3).unwrap();
        assert_eq!(
            t.alice(0).unwrap(),
            &Interval::new(rat(1, 15), rat(4, 15)).unwrap()
        );
    }

    #[test]
    fn invariant_holds_against_random_bobs() {
        let s = BaTargeter::new(rat(1, 50), params()).unwrap();
        for seed in 0..10 {
            for bob in [Random::default(), Random { extreme: true }] {
                let rec = play_logged(&params(), &bob, &s, 30, None, seed).unwrap();
                let report = ba_invariant_check(&rec.transcript, &rat(1, 50));
                assert!(report.passed(), "seed {seed}: {:?}", report.violations);
            }
        }
    }
}
