//! Bob's strategy against the base-`B` badly approximable sets: repeatedly
//! steer the game into `J_n`, the union of the open `c/B^n`-neighborhoods of
//! the level-`n` grid, for increasing `n`.

use num_traits::Zero;

use super::common::{
    center_range, last_move, log_window, nearest_grid_point_in, next_length, round_of, toward,
};
use crate::analysis::j_n_hit;
use crate::game::{
    ensure_params, GameParams, Interval, Player, Side, Sides, Strategy, StrategyError,
    StrategyEvent, Transcript,
};
use crate::numerics::rational::{fmt_rational, pow_int};
use crate::numerics::{first_window_hit, floor_log, is_log_rational, rat, LogExpr, Rational};

/// Rounds a chase may take before Bob abandons the target and reschedules.
/// The drift budget is exactly exhausted in the worst case, so a chase is
/// not guaranteed to finish against every opponent.
pub const CHASE_BUDGET: usize = 200;

#[derive(Clone, Debug)]
pub struct BbaTargeter {
    base: u32,
    c: Rational,
    params: GameParams,
    epsilon: Rational,
}

impl BbaTargeter {
    /// `2c(1−β)(1−αβ)/(βγ_A)`, or `None` when `γ_A ≤ 0`.
    pub fn condition_value(c: &Rational, params: &GameParams) -> Option<Rational> {
        let g = params.gamma_a();
        if g <= Rational::zero() {
            return None;
        }
        let one = rat(1, 1);
        Some(
            rat(2, 1) * c * (&one - params.beta()) * (&one - params.product())
                / (params.beta() * g),
        )
    }

    /// Requires `B ≥ 2`, `c > 0`, `γ_A > 0`, a condition value above 1 and
    /// `log_B(αβ)` irrational.
    pub fn new(base: u32, c: Rational, params: GameParams) -> Result<Self, StrategyError> {
        let hyp = |m: String| Err(StrategyError::Hypothesis(m));
        if base < 2 {
            return hyp(format!("base must be at least 2, got {base}"));
        }
        if c <= Rational::zero() {
            return hyp(format!("c must be positive, got {}", fmt_rational(&c)));
        }
        let Some(v) = Self::condition_value(&c, &params) else {
            return hyp(format!("bba targeter needs gamma_A > 0 at {params}"));
        };
        if v <= rat(1, 1) {
            return hyp(format!(
                "bba targeter needs 2c(1-b)(1-ab)/(b*gamma_A) > 1, got {}",
                fmt_rational(&v)
            ));
        }
        if let Some(r) = is_log_rational(base, &params.product())? {
            return hyp(format!(
                "log_{base}(alpha*beta) = {} is rational",
                fmt_rational(&r)
            ));
        }
        Ok(BbaTargeter {
            base,
            c,
            params,
            epsilon: v - rat(1, 1),
        })
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    /// `1/(1−β)`: the least admissible `B^N|A_t|`.
    fn lower(&self) -> Rational {
        rat(1, 1) / (rat(1, 1) - self.params.beta())
    }

    /// `2c(1−αβ)/(βγ_A)`: the greatest admissible `B^N|A_t|`.
    fn upper(&self) -> Rational {
        self.lower() * (rat(1, 1) + &self.epsilon)
    }

    /// Length `2c(1−αβ)/(Bγ_A)` centered at `1/B`.
    pub fn opening(&self) -> Interval {
        let b = Rational::from_integer(self.base.into());
        let len = rat(2, 1) * &self.c * (rat(1, 1) - self.params.product())
            / (&b * self.params.gamma_a());
        Interval::centered(&(rat(1, 1) / b), &len).expect("positive length")
    }
}

#[derive(Debug)]
enum Phase {
    Chasing {
        n: i64,
        point: Rational,
        since: usize,
    },
    Drifting {
        next_t: u64,
    },
}

struct BbaPlayer {
    cfg: BbaTargeter,
    phase: Phase,
    last_n: i64,
    xi: LogExpr,
    chi: LogExpr,
    window: Rational,
    events: Vec<StrategyEvent>,
}

impl Strategy for BbaTargeter {
    fn name(&self) -> String {
        format!("bba-targeter:{}:{}", self.base, fmt_rational(&self.c))
    }
    fn sides(&self) -> Sides {
        Sides::Bob
    }
    fn start(
        &self,
        params: &GameParams,
        _: Side,
        _: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_params(&self.params, params)?;
        let a0 = self.params.alpha() * self.opening().length();
        let xi = LogExpr::log(self.base, self.params.product())?;
        let chi = LogExpr::log(self.base, a0 / self.lower())?;
        let window = log_window(self.base, &(rat(1, 1) + &self.epsilon))?;
        Ok(Box::new(BbaPlayer {
            cfg: self.clone(),
            phase: Phase::Drifting { next_t: 0 },
            last_n: 0,
            xi,
            chi,
            window,
            events: Vec::new(),
        }))
    }
}

impl BbaPlayer {
    /// The next Alice index `t ≥ from` with `|A_t|` in a scheduling window.
    fn schedule(&self, from: usize) -> Result<Phase, StrategyError> {
        let t = first_window_hit(&self.xi, &self.chi, &rat(0, 1), &self.window, from as u64)?;
        Ok(Phase::Drifting { next_t: t })
    }

    /// `N` with `L ≤ B^N|A| ≤ U`, if it is a new level.
    fn level_for(&self, a: &Interval) -> Result<Option<i64>, StrategyError> {
        let n = -floor_log(self.cfg.base, &(a.length() / self.cfg.lower()))?;
        let scaled = pow_int(self.cfg.base, n) * a.length();
        let ok =
            n >= 1 && n > self.last_n && scaled >= self.cfg.lower() && scaled <= self.cfg.upper();
        Ok(ok.then_some(n))
    }

    fn after_move(&mut self, mv: &Interval, round: usize) -> Result<(), StrategyError> {
        if let Phase::Chasing { n, since, .. } = &self.phase {
            let n = *n;
            if let Some(k) = j_n_hit(mv, self.cfg.base, n, &self.cfg.c) {
                self.events.push(StrategyEvent::JnHit {
                    round,
                    n,
                    k: k.to_string(),
                });
                self.last_n = self.last_n.max(n);
                self.phase = self.schedule(round)?;
            } else if round - since > CHASE_BUDGET {
                self.phase = self.schedule(round)?;
            }
        }
        Ok(())
    }
}

impl Player for BbaPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let Some(len) = next_length(t) else {
            let open = self.cfg.opening();
            let point = rat(1, 1) / Rational::from_integer(self.cfg.base.into());
            self.phase = Phase::Chasing {
                n: 1,
                point,
                since: 0,
            };
            self.after_move(&open, 0)?;
            return Ok(open);
        };
        let round = round_of(t);
        let a = last_move(t)?;
        let mv = match &self.phase {
            Phase::Chasing { point, .. } => toward(a, &len, point)?,
            Phase::Drifting { next_t } if *next_t as usize == round - 1 => {
                match self.level_for(a)? {
                    Some(n) => {
                        let (lo, hi) = center_range(a, &len);
                        let point = nearest_grid_point_in(&a.center(), &lo, &hi, self.cfg.base, n)
                            .ok_or_else(|| {
                                StrategyError::Internal(format!(
                                    "no center m/{}^{n} available inside {a}",
                                    self.cfg.base
                                ))
                            })?;
                        self.events.push(StrategyEvent::Scheduled { round, n });
                        self.phase = Phase::Chasing {
                            n,
                            point: point.clone(),
                            since: round,
                        };
                        Interval::centered(&point, &len)?
                    }
                    None => {
                        self.phase = self.schedule(round)?;
                        a.concentric(&len)?
                    }
                }
            }
            Phase::Drifting { .. } => a.concentric(&len)?,
        };
        self.after_move(&mv, round)?;
        Ok(mv)
    }

    fn drain_events(&mut self) -> Vec<StrategyEvent> {
        std::mem::take(&mut self.events)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::play_logged;
    use crate::strategies::basic::{Center, Random};
    use std::collections::BTreeSet;

    fn params(a: Rational, b: Rational) -> GameParams {
        GameParams::new(a, b).unwrap()
    }

    #[test]
    fn condition_and_opening() {
        let p = params(rat(1, 2), rat(1, 10));
        assert_eq!(
            BbaTargeter::condition_value(&rat(7, 200), &p),
            Some(rat(1197, 100))
        );
        let s = BbaTargeter::new(2, rat(7, 200), p).unwrap();
        assert_eq!(s.opening().length(), rat(133, 200));
        assert_eq!(s.opening().center(), rat(1, 2));
        let half = params(rat(1, 2), rat(1, 2));
        assert_eq!(
            BbaTargeter::condition_value(&rat(7, 200), &half),
            Some(rat(21, 100))
        );
        assert!(BbaTargeter::new(2, rat(7, 200), half).is_err());
    }

    #[test]
    fn rejects_rational_log() {
        // αβ = 1/4 = 2^-2.
        let p = params(rat(1, 2), rat(1, 2));
        assert!(matches!(
            BbaTargeter::new(2, rat(1, 2), p),
            Err(StrategyError::Hypothesis(_))
        ));
    }

    #[test]
    fn hits_increasing_levels() {
        let p = params(rat(1, 2), rat(1, 10));
        let s = BbaTargeter::new(2, rat(7, 200), p.clone()).unwrap();
        for (seed, alice) in [
            (0, &Center as &dyn Strategy),
            (1, &Random { extreme: true }),
            (2, &Random::default()),
        ] {
            let rec = play_logged(&p, &s, alice, 40, None, seed).unwrap();
            let mut levels = BTreeSet::new();
            for ev in &rec.events {
                if let StrategyEvent::JnHit { round, n, .. } = &ev.event {
                    let b = rec.transcript.bob(*round).unwrap();
                    assert!(j_n_hit(b, 2, *n, &rat(7, 200)).is_some());
                    levels.insert(*n);
                }
            }
            assert!(levels.len() >= 3, "seed {seed}: {levels:?}");
        }
    }
}
