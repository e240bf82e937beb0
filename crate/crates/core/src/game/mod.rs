//! The Schmidt game state machine: legal moves, turn alternation and
//! transcripts.

mod engine;
mod interval;
mod params;
mod strategy;
mod transcript;

pub use engine::{
    play, play_logged, replay_matches, side_seeds, GameRecord, LoggedEvent, ReplayMismatch,
};
pub use interval::Interval;
pub use params::GameParams;
pub use strategy::{
    ensure_params, ensure_side, Player, Sides, Strategy, StrategyError, StrategyEvent,
};
pub use transcript::{
    outcome_interval, validate_move, Move, MoveRejection, Side, Transcript, TRANSCRIPT_SCHEMA,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("degenerate interval [{lo}, {hi}]: need lo < hi")]
    DegenerateInterval { lo: String, hi: String },
    #[error("parameters (α, β) = ({alpha}, {beta}) outside the open unit square")]
    InvalidParams { alpha: String, beta: String },
    #[error("rounds must be at least 1, got {0}")]
    InvalidRounds(usize),
    #[error("illegal move {index} by {side} ({interval}): {rejection}")]
    IllegalMove {
        side: Side,
        index: usize,
        interval: Box<Interval>,
        rejection: MoveRejection,
    },
    #[error("{side} failed at move {index}: {source}")]
    Strategy {
        side: Side,
        index: usize,
        source: Box<StrategyError>,
    },
    #[error("malformed transcript: {0}")]
    Json(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    /// Concentric nesting for both sides, opening at `[0, 1]`.
    #[derive(Debug)]
    struct Nest;
    struct NestPlayer(Side);

    impl Strategy for Nest {
        fn name(&self) -> String {
            "nest".into()
        }
        fn sides(&self) -> Sides {
            Sides::Both
        }
        fn start(
            &self,
            _: &GameParams,
            side: Side,
            _: u64,
        ) -> Result<Box<dyn Player>, StrategyError> {
            Ok(Box::new(NestPlayer(side)))
        }
    }

    impl Player for NestPlayer {
        fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
            let Some(last) = t.last() else {
                return Ok(Interval::new(rat(0, 1), rat(1, 1))?);
            };
            let ratio = if self.0 == Side::Alice {
                t.params().alpha()
            } else {
                t.params().beta()
            };
            Ok(last.concentric(&(last.length() * ratio))?)
        }
    }

    /// Returns the previous interval unchanged.
    #[derive(Debug)]
    struct Stay;

    impl Strategy for Stay {
        fn name(&self) -> String {
            "stay".into()
        }
        fn sides(&self) -> Sides {
            Sides::Both
        }
        fn start(&self, _: &GameParams, _: Side, _: u64) -> Result<Box<dyn Player>, StrategyError> {
            Ok(Box::new(StayPlayer))
        }
    }

    struct StayPlayer;

    impl Player for StayPlayer {
        fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
            Ok(t.last()
                .cloned()
                .unwrap_or(Interval::new(rat(0, 1), rat(1, 1))?))
        }
    }

    #[test]
    fn lengths_follow_the_product() {
        let p = GameParams::new(rat(1, 2), rat(1, 2)).unwrap();
        let t = play(&p, &Nest, &Nest, 3, None, 0).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.bob(3).unwrap().length(), rat(1, 64));
        assert_eq!(outcome_interval(&t).unwrap().length(), rat(1, 64));
    }

    #[test]
    fn illegal_moves_abort() {
        let p = GameParams::new(rat(1, 2), rat(1, 2)).unwrap();
        let err = play(&p, &Nest, &Stay, 3, None, 0).unwrap_err();
        match err {
            GameError::IllegalMove {
                side,
                index,
                rejection,
                ..
            } => {
                assert_eq!((side, index), (Side::Alice, 1));
                assert!(matches!(rejection, MoveRejection::Ratio { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            play(&p, &Nest, &Nest, 0, None, 0).unwrap_err(),
            GameError::InvalidRounds(0)
        );
    }

    #[test]
    fn opening_override_and_replay() {
        let p = GameParams::new(rat(1, 3), rat(1, 2)).unwrap();
        let open = Interval::new(rat(2, 1), rat(5, 1)).unwrap();
        let t = play(&p, &Nest, &Nest, 4, Some(open.clone()), 9).unwrap();
        assert_eq!(t.bob(0), Some(&open));
        assert_eq!(replay_matches(&Nest, Side::Alice, &t, 0, false), Ok(()));
        assert_eq!(replay_matches(&Nest, Side::Bob, &t, 0, true), Ok(()));
        assert!(replay_matches(&Nest, Side::Bob, &t, 0, false).is_err());
    }
}
