use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    ensure_side, GameError, GameParams, Interval, Player, Side, Strategy, StrategyEvent, Transcript,
};

/// A played game together with every certified strategy event.
#[derive(Clone, Debug, Serialize)]
pub struct GameRecord {
    pub transcript: Transcript,
    pub events: Vec<LoggedEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoggedEvent {
    pub side: Side,
    #[serde(flatten)]
    pub event: StrategyEvent,
}

/// Per-side seeds derived from the game seed.
pub fn side_seeds(seed: u64) -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (rng.next_u64(), rng.next_u64())
}

/// Plays `B_0` through `B_rounds` and returns the transcript.
pub fn play(
    params: &GameParams,
    bob: &dyn Strategy,
    alice: &dyn Strategy,
    rounds: usize,
    opening: Option<Interval>,
    seed: u64,
) -> Result<Transcript, GameError> {
    play_logged(params, bob, alice, rounds, opening, seed).map(|r| r.transcript)
}

/// [`play`], keeping the strategies' event logs.
///
/// An explicit `opening` replaces Bob's own. Every move is validated; an
/// illegal move aborts the game with its index.
pub fn play_logged(
    params: &GameParams,
    bob: &dyn Strategy,
    alice: &dyn Strategy,
    rounds: usize,
    opening: Option<Interval>,
    seed: u64,
) -> Result<GameRecord, GameError> {
    if rounds == 0 {
        return Err(GameError::InvalidRounds(rounds));
    }
    let (bob_seed, alice_seed) = side_seeds(seed);
    let start = |s: &dyn Strategy, side: Side, seed: u64| -> Result<Box<dyn Player>, GameError> {
        ensure_side(s, side)
            .and_then(|_| s.start(params, side, seed))
            .map_err(|e| GameError::Strategy {
                side,
                index: 0,
                source: Box::new(e),
            })
    };
    let mut bob_player = start(bob, Side::Bob, bob_seed)?;
    let mut alice_player = start(alice, Side::Alice, alice_seed)?;
    let mut transcript = Transcript::new(params.clone());
    let mut events = Vec::new();
    if let Some(iv) = opening {
        transcript.push(iv)?;
    }
    while transcript.len() < 2 * rounds + 1 {
        let side = transcript.next_side();
        let player = match side {
            Side::Bob => &mut bob_player,
            Side::Alice => &mut alice_player,
        };
        let index = transcript.len();
        let mv = player
            .respond(&transcript)
            .map_err(|e| GameError::Strategy {
                side,
                index,
                source: Box::new(e),
            })?;
        transcript.push(mv)?;
        events.extend(
            player
                .drain_events()
                .into_iter()
                .map(|event| LoggedEvent { side, event }),
        );
    }
    Ok(GameRecord { transcript, events })
}

/// Where a replayed strategy disagrees with a recorded transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayMismatch {
    pub index: usize,
    pub recorded: Interval,
    pub replayed: Option<Interval>,
}

/// Feeds every prefix of `transcript` to a fresh `side` player of
/// `strategy` and checks that it reproduces each of that side's moves.
/// With `skip_opening`, an externally imposed `B_0` is not compared.
pub fn replay_matches(
    strategy: &dyn Strategy,
    side: Side,
    transcript: &Transcript,
    seed: u64,
    skip_opening: bool,
) -> Result<(), Box<ReplayMismatch>> {
    let mut player = strategy
        .start(transcript.params(), side, seed)
        .map_err(|_| {
            Box::new(ReplayMismatch {
                index: 0,
                recorded: transcript.last().cloned().expect("nonempty transcript"),
                replayed: None,
            })
        })?;
    for (index, mv) in transcript.moves().iter().enumerate() {
        if mv.player != side || (index == 0 && skip_opening) {
            continue;
        }
        let replayed = player.respond(&transcript.prefix(index)).ok();
        if replayed.as_ref() != Some(&mv.interval) {
            return Err(Box::new(ReplayMismatch {
                index,
                recorded: mv.interval.clone(),
                replayed,
            }));
        }
    }
    Ok(())
}
