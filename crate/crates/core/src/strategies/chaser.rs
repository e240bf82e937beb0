//! Center-drift play: keep the center still, or pull it toward a point.

use num_traits::Zero;

use super::common::{last_move, next_length, toward, unit_interval};
use crate::game::{
    ensure_params, GameParams, Interval, Player, Side, Sides, Strategy, StrategyError, Transcript,
};
use crate::numerics::rational::fmt_rational;
use crate::numerics::{rat, Rational};

/// Which part of the move is aimed at a fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChaseSide {
    /// The move's right endpoint, so the move approaches from the left.
    Left,
    /// The move's left endpoint, so the move approaches from the right.
    Right,
    /// The move's center.
    Nearest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChaseTarget {
    /// Keep the center where this player last put it. This minimizes the
    /// drift of each step, which is at most `(|B_t|/2)γ`.
    Hold,
    Fixed {
        point: Rational,
        side: ChaseSide,
    },
}

/// Moves the center as far toward the target as legality allows.
#[derive(Clone, Debug)]
pub struct Chaser {
    #[allow(dead_code)]
    side: Side,
    target: ChaseTarget,
    params: GameParams,
}

impl Chaser {
    /// Requires a positive drift capacity for `side`: `γ_A` for Bob,
    /// `γ_B` for Alice.
    pub fn new(side: Side, target: ChaseTarget, params: GameParams) -> Result<Self, StrategyError> {
        let gamma = match side {
            Side::Bob => params.gamma_a(),
            Side::Alice => params.gamma_b(),
        };
        if gamma <= Rational::zero() {
            return Err(StrategyError::Hypothesis(format!(
                "chaser for {side} needs a positive drift capacity, got {}",
                fmt_rational(&gamma)
            )));
        }
        Ok(Chaser {
            side,
            target,
            params,
        })
    }

    /// Largest center shift of one move answering a move of length `len`.
    pub fn max_step(&self, len: &Rational) -> Rational {
        let gamma = match self.side {
            Side::Bob => self.params.gamma_a(),
            Side::Alice => self.params.gamma_b(),
        };
        len * gamma / rat(2, 1)
    }

    /// Bound on the total drift from a move of length `len` onward.
    pub fn drift_bound(&self, len: &Rational) -> Rational {
        self.max_step(len) / (rat(1, 1) - self.params.product())
    }
}

struct ChaserPlayer {
    target: ChaseTarget,
    #[allow(dead_code)]
    side: Side,
    center: Option<Rational>,
}

impl Strategy for Chaser {
    fn name(&self) -> String {
        match &self.target {
            ChaseTarget::Hold => "chaser".into(),
            ChaseTarget::Fixed { point, side } => {
                format!("chaser:{}:{side:?}", fmt_rational(point)).to_lowercase()
            }
        }
    }
    fn sides(&self) -> Sides {
        match self.side {
            Side::Bob => Sides::Bob,
            Side::Alice => Sides::Alice,
        }
    }
    fn is_positional(&self) -> bool {
        matches!(self.target, ChaseTarget::Fixed { .. })
    }
    fn start(
        &self,
        params: &GameParams,
        side: Side,
        _: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_params(&self.params, params)?;
        Ok(Box::new(ChaserPlayer {
            target: self.target.clone(),
            side,
            center: None,
        }))
    }
}

/// The move of length `len` inside `prev` keeping the center as close as
/// possible to `center`.
pub fn hold_move(
    prev: &Interval,
    len: &Rational,
    center: &Rational,
) -> Result<Interval, StrategyError> {
    toward(prev, len, center)
}

impl Player for ChaserPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let Some(len) = next_length(t) else {
            let open = match &self.target {
                ChaseTarget::Fixed { point, .. } => Interval::centered(point, &rat(1, 1))?,
                ChaseTarget::Hold => unit_interval(),
            };
            self.center = Some(open.center());
            return Ok(open);
        };
        let prev = last_move(t)?;
        let aim = match &self.target {
            ChaseTarget::Hold => self.center.clone().unwrap_or_else(|| prev.center()),
            ChaseTarget::Fixed { point, side } => {
                let half = &len / rat(2, 1);
                match side {
                    ChaseSide::Nearest => point.clone(),
                    ChaseSide::Left => point - half,
                    ChaseSide::Right => point + half,
                }
            }
        };
        let mv = hold_move(prev, &len, &aim)?;
        self.center = Some(mv.center());
        Ok(mv)
    }
}
