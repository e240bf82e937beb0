//! Alice's zero-forcing strategy for the digit-frequency sets.

use num_bigint::BigInt;

use super::common::{last_move, round_of};
use crate::game::{
    ensure_params, GameParams, Interval, Player, Side, Sides, Strategy, StrategyError,
    StrategyEvent, Transcript,
};
use crate::numerics::rational::{ceil_int, fmt_rational, pow_int};
use crate::numerics::{floor_log, is_log_rational, rat, Rational};

/// On `B_t`, Alice plays `[m/2^k, m/2^k + α|B_t|]` with `k = k_t` and `m`
/// the smallest integer such that `m/2^k ∈ B_t`; every point of the move
/// then has binary digits `k+1 ..= k+l_t` equal to zero.
#[derive(Clone, Debug)]
pub struct DigitForcer {
    params: GameParams,
}

/// Bookkeeping of one forcing move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcedMove {
    pub interval: Interval,
    /// Dyadic level of the left endpoint: `k = −⌊log₂(|B|/2)⌋`.
    pub k: i64,
    /// Number of forced zeros: `k + l = −⌊log₂(α|B|/2)⌋ − 2`.
    pub l: i64,
    pub m: BigInt,
}

impl DigitForcer {
    /// Requires `α ≤ 1/4` and `log₂(αβ)` irrational.
    pub fn new(params: GameParams) -> Result<Self, StrategyError> {
        if params.alpha() > &rat(1, 4) {
            return Err(StrategyError::Hypothesis(format!(
                "digit forcer needs alpha <= 1/4, got {}",
                fmt_rational(params.alpha())
            )));
        }
        if let Some(r) = is_log_rational(2, &params.product())? {
            return Err(StrategyError::Hypothesis(format!(
                "digit forcer needs log2(alpha*beta) irrational, it equals {}",
                fmt_rational(&r)
            )));
        }
        Ok(DigitForcer { params })
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }
}

/// The forcing answer to `b` when Alice's ratio is `alpha`.
pub fn forced_move(b: &Interval, alpha: &Rational) -> Result<ForcedMove, StrategyError> {
    let radius = b.length() / rat(2, 1);
    let k = -floor_log(2, &radius)?;
    let l = -floor_log(2, &(alpha * &radius))? - 2 - k;
    let cell = pow_int(2, -k);
    let m = ceil_int(&(b.lo() / &cell));
    let lo = Rational::from_integer(m.clone()) * cell;
    let interval = Interval::from_lo(lo, &(alpha * b.length()))?;
    if !b.contains(&interval) {
        return Err(StrategyError::Internal(format!(
            "forced move {interval} escapes {b}"
        )));
    }
    Ok(ForcedMove { interval, k, l, m })
}

struct DigitForcerPlayer {
    events: Vec<StrategyEvent>,
    forced_total: i64,
}

impl Strategy for DigitForcer {
    fn name(&self) -> String {
        "digit-forcer".into()
    }
    fn sides(&self) -> Sides {
        Sides::Alice
    }
    fn is_positional(&self) -> bool {
        true
    }
    fn start(
        &self,
        params: &GameParams,
        _: Side,
        _: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_params(&self.params, params)?;
        Ok(Box::new(DigitForcerPlayer {
            events: Vec::new(),
            forced_total: 0,
        }))
    }
}

impl Player for DigitForcerPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let mv = forced_move(last_move(t)?, t.params().alpha())?;
        self.forced_total += mv.l;
        self.events.push(StrategyEvent::ForcedZeros {
            round: round_of(t),
            k: mv.k,
            l: mv.l,
        });
        Ok(mv.interval)
    }

    fn drain_events(&mut self) -> Vec<StrategyEvent> {
        std::mem::take(&mut self.events)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn first_move_at_unit_interval() {
        let mv = forced_move(&iv(rat(0, 1), rat(1, 1)), &rat(1, 8)).unwrap();
        assert_eq!(mv.k, 1);
        assert_eq!(mv.interval, iv(rat(0, 1), rat(1, 8)));
        // α|B|/2 = 1/16, so k + l = 4 − 2 = 2.
        assert_eq!(mv.l, 1);
    }

    #[test]
    fn construction_checks() {
        assert!(DigitForcer::new(GameParams::new(rat(1, 2), rat(1, 2)).unwrap()).is_err());
        // αβ = 1/16 has a rational base-2 logarithm.
        assert!(DigitForcer::new(GameParams::new(rat(1, 4), rat(1, 4)).unwrap()).is_err());
        assert!(DigitForcer::new(GameParams::new(rat(1, 8), rat(1, 3)).unwrap()).is_ok());
    }

    #[test]
    fn forced_block_sits_in_one_dyadic_cell() {
        let b = iv(rat(5, 7), rat(5, 7) + rat(1, 24 * 24));
        let mv = forced_move(&b, &rat(1, 8)).unwrap();
        let cell = pow_int(2, -(mv.k + mv.l));
        let start = Rational::from_integer(mv.m.clone()) * pow_int(2, -mv.k);
        assert!(mv.interval.hi() < &(start + cell));
        assert!(b.contains(&mv.interval));
    }
}
