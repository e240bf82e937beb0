//! Move geometry shared by the strategies.

use std::cmp::Ordering;

use num_traits::Signed;

use crate::game::{GameParams, Interval, Side, StrategyError, Transcript};
use crate::numerics::rational::{ceil_int, floor_int, pow_int};
use crate::numerics::{cmp_rat, rat, LogExpr, NumericsError, Rational};

/// The shrink ratio for `side`'s moves.
pub fn ratio(params: &GameParams, side: Side) -> &Rational {
    match side {
        Side::Alice => params.alpha(),
        Side::Bob => params.beta(),
    }
}

/// Length of the next move in `t`.
pub fn next_length(t: &Transcript) -> Option<Rational> {
    t.last()
        .map(|prev| prev.length() * ratio(t.params(), t.next_side()))
}

/// Closed range of centers for a move of the given length inside `prev`.
pub fn center_range(prev: &Interval, length: &Rational) -> (Rational, Rational) {
    let half = length / rat(2, 1);
    (prev.lo() + &half, prev.hi() - half)
}

pub fn clamp(x: &Rational, lo: &Rational, hi: &Rational) -> Rational {
    if cmp_rat(x, lo) == Ordering::Less {
        lo.clone()
    } else if cmp_rat(x, hi) == Ordering::Greater {
        hi.clone()
    } else {
        x.clone()
    }
}

/// The legal move of the given length whose center is closest to `target`.
pub fn toward(
    prev: &Interval,
    length: &Rational,
    target: &Rational,
) -> Result<Interval, StrategyError> {
    let (lo, hi) = center_range(prev, length);
    Ok(Interval::centered(&clamp(target, &lo, &hi), length)?)
}

/// Default opening `[0, 1]`.
pub fn unit_interval() -> Interval {
    Interval::new(rat(0, 1), rat(1, 1)).expect("0 < 1")
}

/// Index `i` of the move about to be played (`B_i` or `A_i`).
pub fn round_of(t: &Transcript) -> usize {
    t.len() / 2
}

/// Fails unless the last move exists; strategies that cannot open use this.
pub fn last_move(t: &Transcript) -> Result<&Interval, StrategyError> {
    t.last()
        .ok_or_else(|| StrategyError::Internal("no move to respond to".into()))
}

/// A positive rational lower bound for `log_base(x)`, capped at 1, for
/// `x > 1`. Used as the width of a scheduling window `[0, w)`.
pub fn log_window(base: u32, x: &Rational) -> Result<Rational, StrategyError> {
    if x >= &Rational::from_integer(base.into()) {
        return Ok(rat(1, 1));
    }
    let expr = LogExpr::log(base, x.clone())?;
    let mut bits = 64;
    loop {
        let lower = expr.enclose(bits).lower;
        if lower > rat(0, 1) {
            return Ok(lower);
        }
        if bits >= 16384 {
            return Err(NumericsError::PrecisionCap { t: None, bits }.into());
        }
        bits *= 2;
    }
}

/// The smallest `m` with `m/base^n` in `[lo, hi]`, if any.
pub fn grid_point_in(lo: &Rational, hi: &Rational, base: u32, n: i64) -> Option<Rational> {
    let cell = pow_int(base, -n);
    let m = ceil_int(&(lo / &cell));
    let p = Rational::from_integer(m) * cell;
    (&p <= hi).then_some(p)
}

/// The point `m/base^n` nearest `x` within `[lo, hi]`, ties to the left.
pub fn nearest_grid_point_in(
    x: &Rational,
    lo: &Rational,
    hi: &Rational,
    base: u32,
    n: i64,
) -> Option<Rational> {
    let cell = pow_int(base, -n);
    let scaled = clamp(x, lo, hi) / &cell;
    let below = Rational::from_integer(floor_int(&scaled)) * &cell;
    let above = Rational::from_integer(ceil_int(&scaled)) * &cell;
    let mut options: Vec<Rational> = [below, above]
        .into_iter()
        .filter(|p| p >= lo && p <= hi)
        .collect();
    options.sort_by(|a, b| (a - x).abs().cmp(&(b - x).abs()).then(a.cmp(b)));
    options.into_iter().next()
}
