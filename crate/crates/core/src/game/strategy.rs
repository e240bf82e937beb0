use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numerics::rational::serde_rational;
use crate::numerics::{NumericsError, Rational};

use super::{GameError, GameParams, Interval, Side, Transcript};

/// Which sides a strategy can play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sides {
    Bob,
    Alice,
    Both,
}

impl Sides {
    pub fn allows(self, side: Side) -> bool {
        matches!(
            (self, side),
            (Sides::Both, _) | (Sides::Bob, Side::Bob) | (Sides::Alice, Side::Alice)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    /// A constructor's hypothesis does not hold at these parameters.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("strategy built for {expected} cannot play {actual}")]
    ParamsMismatch { expected: String, actual: String },
    #[error("{name} cannot play {side}")]
    WrongSide { name: String, side: Side },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Game(#[from] GameError),
    /// A situation the underlying argument rules out; always a bug signal.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// Certified milestones reported by strategies during play.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event")]
pub enum StrategyEvent {
    /// Every point of `A_round` has binary digits `k+1 ..= k+l` equal to 0.
    ForcedZeros { round: usize, k: i64, l: i64 },
    /// `B_round ⊆ (k/B^n − c/B^n, k/B^n + c/B^n)`.
    JnHit { round: usize, n: i64, k: String },
    /// `B_round ⊆ ((m − 1/6)/3^n, (m + 1/6)/3^n)`.
    ThreeBaVisit { round: usize, n: i64, m: String },
    /// Alice's choice of `A_round` centered at `center`, with its bookkeeping.
    BaChoice {
        round: usize,
        k: i64,
        q: i64,
        #[serde(with = "serde_rational")]
        center: Rational,
        case_two: bool,
    },
    /// A scheduled turn chosen by equidistribution.
    Scheduled { round: usize, n: i64 },
}

/// A strategy description; immutable and shareable across games.
pub trait Strategy: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn sides(&self) -> Sides;

    /// Whether each move depends only on the most recent interval.
    fn is_positional(&self) -> bool {
        false
    }

    /// Per-game state for playing `side` of the `params` game.
    fn start(
        &self,
        params: &GameParams,
        side: Side,
        seed: u64,
    ) -> Result<Box<dyn Player>, StrategyError>;
}

/// Per-game state of a strategy.
pub trait Player: Send {
    /// The next move for this player. On an empty transcript this is Bob's
    /// opening.
    fn respond(&mut self, transcript: &Transcript) -> Result<Interval, StrategyError>;

    /// Events certified since the last call.
    fn drain_events(&mut self) -> Vec<StrategyEvent> {
        Vec::new()
    }
}

/// Rejects parameters other than the ones a strategy was constructed for.
pub fn ensure_params(expected: &GameParams, actual: &GameParams) -> Result<(), StrategyError> {
    if expected != actual {
        return Err(StrategyError::ParamsMismatch {
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }
    Ok(())
}

/// Rejects sides a strategy cannot play.
pub fn ensure_side(strategy: &dyn Strategy, side: Side) -> Result<(), StrategyError> {
    if !strategy.sides().allows(side) {
        return Err(StrategyError::WrongSide {
            name: strategy.name(),
            side,
        });
    }
    Ok(())
}
