use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numerics::rational::fmt_rational;
use crate::numerics::{cmp_rat, Rational};

use super::{GameError, GameParams, Interval};

pub const TRANSCRIPT_SCHEMA: &str = "schmidt-transcript/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Bob,
    Alice,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Bob => Side::Alice,
            Side::Alice => Side::Bob,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Bob => "Bob",
            Side::Alice => "Alice",
        })
    }
}

/// The clause of [`validate_move`] a move failed.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MoveRejection {
    #[error("containment violated: {next} is not inside {prev}")]
    Containment {
        prev: Box<Interval>,
        next: Box<Interval>,
    },
    #[error("exact ratio violated: length {actual} should be {expected}")]
    Ratio { expected: String, actual: String },
    #[error("ratio {0} outside (0, 1)")]
    BadRatio(String),
}

/// Accepts `next` iff `next ⊆ prev` (closed) and `|next| = ratio·|prev|` exactly.
pub fn validate_move(
    prev: &Interval,
    next: &Interval,
    ratio: &Rational,
) -> Result<(), MoveRejection> {
    use num_traits::{One, Zero};
    if ratio <= &Rational::zero() || ratio >= &Rational::one() {
        return Err(MoveRejection::BadRatio(fmt_rational(ratio)));
    }
    let expected = prev.length() * ratio;
    let actual = next.length();
    if cmp_rat(&actual, &expected) != std::cmp::Ordering::Equal {
        return Err(MoveRejection::Ratio {
            expected: fmt_rational(&expected),
            actual: fmt_rational(&actual),
        });
    }
    if !prev.contains(next) {
        return Err(MoveRejection::Containment {
            prev: Box::new(prev.clone()),
            next: Box::new(next.clone()),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub player: Side,
    #[serde(flatten)]
    pub interval: Interval,
}

/// Alternating legal moves `B_0, A_0, B_1, A_1, …`.
///
/// Every move pushed is validated, so a `Transcript` value is always legal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    params: GameParams,
    moves: Vec<Move>,
}

impl Transcript {
    pub fn new(params: GameParams) -> Self {
        Transcript {
            params,
            moves: Vec::new(),
        }
    }

    /// Rebuilds a transcript from bare intervals, validating every move.
    pub fn from_intervals(
        params: GameParams,
        intervals: impl IntoIterator<Item = Interval>,
    ) -> Result<Self, GameError> {
        let mut t = Transcript::new(params);
        for iv in intervals {
            t.push(iv)?;
        }
        Ok(t)
    }

    pub fn params(&self) -> &GameParams {
        &self.params
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn intervals(&self) -> impl Iterator<Item = &Interval> + '_ {
        self.moves.iter().map(|m| &m.interval)
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Number of completed `(A_i, B_{i+1})` pairs after the opening.
    pub fn round_count(&self) -> usize {
        self.moves.len().saturating_sub(1) / 2
    }

    pub fn next_side(&self) -> Side {
        if self.moves.len().is_multiple_of(2) {
            Side::Bob
        } else {
            Side::Alice
        }
    }

    pub fn last(&self) -> Option<&Interval> {
        self.moves.last().map(|m| &m.interval)
    }

    /// `B_i`, if played.
    pub fn bob(&self, i: usize) -> Option<&Interval> {
        self.moves.get(2 * i).map(|m| &m.interval)
    }

    /// `A_i`, if played.
    pub fn alice(&self, i: usize) -> Option<&Interval> {
        self.moves.get(2 * i + 1).map(|m| &m.interval)
    }

    /// Appends the next move for whichever side is to play.
    pub fn push(&mut self, iv: Interval) -> Result<(), GameError> {
        let side = self.next_side();
        if let Some(prev) = self.last() {
            let ratio = match side {
                Side::Alice => self.params.alpha(),
                Side::Bob => self.params.beta(),
            };
            validate_move(prev, &iv, ratio).map_err(|rejection| GameError::IllegalMove {
                side,
                index: self.moves.len(),
                interval: Box::new(iv.clone()),
                rejection,
            })?;
        }
        self.moves.push(Move {
            player: side,
            interval: iv,
        });
        Ok(())
    }

    /// Same moves, mapped through `f`, under new parameters (revalidated).
    pub fn map(
        &self,
        params: GameParams,
        f: impl Fn(&Interval) -> Interval,
    ) -> Result<Transcript, GameError> {
        Transcript::from_intervals(params, self.intervals().map(f))
    }

    /// The first `n` moves.
    pub fn prefix(&self, n: usize) -> Transcript {
        Transcript {
            params: self.params.clone(),
            moves: self.moves[..n.min(self.moves.len())].to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts serialize")
    }

    pub fn from_json(text: &str) -> Result<Transcript, GameError> {
        let wire: Wire = serde_json::from_str(text).map_err(|e| GameError::Json(e.to_string()))?;
        if wire.schema != TRANSCRIPT_SCHEMA {
            return Err(GameError::Json(format!("unknown schema {:?}", wire.schema)));
        }
        let mut t = Transcript::new(wire.params);
        for m in wire.moves {
            if m.player != t.next_side() {
                return Err(GameError::Json(format!(
                    "move {} should be played by {}",
                    t.len(),
                    t.next_side()
                )));
            }
            t.push(m.interval)?;
        }
        if t.round_count() != wire.round_count {
            return Err(GameError::Json(format!(
                "round_count {} does not match {} moves",
                wire.round_count,
                t.len()
            )));
        }
        Ok(t)
    }
}

/// The last interval, the certified enclosure of the outcome point.
pub fn outcome_interval(t: &Transcript) -> Option<&Interval> {
    t.last()
}

impl Serialize for Transcript {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            schema: TRANSCRIPT_SCHEMA.to_string(),
            params: self.params.clone(),
            round_count: self.round_count(),
            moves: self.moves.clone(),
        }
        .serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    schema: String,
    params: GameParams,
    round_count: usize,
    moves: Vec<Move>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn validate_move_clauses() {
        let half = rat(1, 2);
        assert_eq!(
            validate_move(&iv((0, 1), (1, 1)), &iv((0, 1), (1, 2)), &half),
            Ok(())
        );
        assert!(matches!(
            validate_move(&iv((0, 1), (1, 1)), &iv((3, 4), (5, 4)), &half),
            Err(MoveRejection::Containment { .. })
        ));
        assert!(matches!(
            validate_move(&iv((0, 1), (1, 1)), &iv((0, 1), (4999, 10000)), &half),
            Err(MoveRejection::Ratio { .. })
        ));
        assert!(matches!(
            validate_move(&iv((0, 1), (1, 1)), &iv((0, 1), (1, 1)), &half),
            Err(MoveRejection::Ratio { .. })
        ));
    }

    #[test]
    fn push_alternates_and_validates() {
        let p = GameParams::new(rat(1, 2), rat(1, 2)).unwrap();
        let mut t = Transcript::new(p);
        t.push(iv((0, 1), (1, 1))).unwrap();
        assert_eq!(t.next_side(), Side::Alice);
        t.push(iv((1, 4), (3, 4))).unwrap();
        assert!(t.push(iv((0, 1), (1, 4))).is_err());
        t.push(iv((1, 2), (3, 4))).unwrap();
        assert_eq!(t.round_count(), 1);
        assert_eq!(outcome_interval(&t), Some(&iv((1, 2), (3, 4))));
        assert_eq!(outcome_interval(&t.prefix(1)), Some(&iv((0, 1), (1, 1))));
    }

    #[test]
    fn json_round_trip_revalidates() {
        let p = GameParams::new(rat(1, 2), rat(1, 2)).unwrap();
        let t = Transcript::from_intervals(p, [iv((0, 1), (1, 1)), iv((0, 1), (1, 2))]).unwrap();
        let json = t.to_json();
        assert!(json.contains("\"schema\": \"schmidt-transcript/v1\""));
        assert_eq!(Transcript::from_json(&json).unwrap(), t);
        let tampered = json.replacen(
            "\"n\": \"1\",\n        \"d\": \"2\"",
            "\"n\": \"2\",\n        \"d\": \"3\"",
            1,
        );
        assert_ne!(tampered, json);
        assert!(Transcript::from_json(&tampered).is_err());
    }
}
