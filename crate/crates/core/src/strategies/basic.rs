//! Baseline strategies: concentric nesting, seeded random play and
//! scripted replay.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::common::{last_move, next_length, round_of, unit_interval};
use crate::game::{GameParams, Interval, Player, Side, Sides, Strategy, StrategyError, Transcript};
use crate::numerics::{rat, Rational};

/// Plays the concentric subinterval; opens at `[0, 1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Center;

struct CenterPlayer;

impl Strategy for Center {
    fn name(&self) -> String {
        "center".into()
    }
    fn sides(&self) -> Sides {
        Sides::Both
    }
    fn is_positional(&self) -> bool {
        true
    }
    fn start(&self, _: &GameParams, _: Side, _: u64) -> Result<Box<dyn Player>, StrategyError> {
        Ok(Box::new(CenterPlayer))
    }
}

impl Player for CenterPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        match next_length(t) {
            None => Ok(unit_interval()),
            Some(len) => Ok(last_move(t)?.concentric(&len)?),
        }
    }
}

/// Number of equally spaced positions a random move chooses from, minus one.
pub const RANDOM_GRID: i64 = 1024;

/// Seeded random play on a grid of the free slack; opens at `[0, 1]`.
///
/// With `extreme`, only the two end positions are used, which makes the
/// strategy a maximally drifting adversary.
#[derive(Clone, Copy, Debug, Default)]
pub struct Random {
    pub extreme: bool,
}

struct RandomPlayer {
    rng: ChaCha8Rng,
    extreme: bool,
}

impl Strategy for Random {
    fn name(&self) -> String {
        if self.extreme {
            "random:extreme".into()
        } else {
            "random".into()
        }
    }
    fn sides(&self) -> Sides {
        Sides::Both
    }
    fn start(&self, _: &GameParams, _: Side, seed: u64) -> Result<Box<dyn Player>, StrategyError> {
        Ok(Box::new(RandomPlayer {
            rng: ChaCha8Rng::seed_from_u64(seed),
            extreme: self.extreme,
        }))
    }
}

impl Player for RandomPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let Some(len) = next_length(t) else {
            return Ok(unit_interval());
        };
        let prev = last_move(t)?;
        let j = if self.extreme {
            if self.rng.gen_bool(0.5) {
                RANDOM_GRID
            } else {
                0
            }
        } else {
            self.rng.gen_range(0..=RANDOM_GRID)
        };
        let slack = prev.length() - &len;
        Ok(Interval::from_lo(
            prev.lo() + slack * rat(j, RANDOM_GRID),
            &len,
        )?)
    }
}

/// Plays a fixed list of moves, the `i`-th entry as `B_i` or `A_i`.
#[derive(Clone, Debug)]
pub struct Scripted {
    moves: Vec<Interval>,
}

impl Scripted {
    pub fn new(moves: Vec<Interval>) -> Self {
        Scripted { moves }
    }
}

struct ScriptedPlayer(Vec<Interval>);

impl Strategy for Scripted {
    fn name(&self) -> String {
        "scripted".into()
    }
    fn sides(&self) -> Sides {
        Sides::Both
    }
    fn start(&self, _: &GameParams, _: Side, _: u64) -> Result<Box<dyn Player>, StrategyError> {
        Ok(Box::new(ScriptedPlayer(self.moves.clone())))
    }
}

impl Player for ScriptedPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let i = round_of(t);
        self.0
            .get(i)
            .cloned()
            .ok_or_else(|| StrategyError::Internal(format!("script exhausted at move {i}")))
    }
}

/// Exact length the `i`-th Bob move must have after opening at `b0`.
pub fn expected_bob_length(params: &GameParams, b0: &Rational, i: usize) -> Rational {
    crate::numerics::rational::pow_rat(&params.product(), i as i64) * b0
}
