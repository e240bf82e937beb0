//! Bob's strategy against `{x : |x − m/3^k| ≥ 1/(6·3^k)}`: at scheduled
//! turns, center on a ternary grid point and then steer into the open
//! sixth-neighborhood of it or of a finer neighbor.

use num_traits::Signed;

use super::common::{
    center_range, last_move, log_window, nearest_grid_point_in, next_length, round_of, toward,
};
use crate::game::{
    ensure_params, GameParams, Interval, Player, Side, Sides, Strategy, StrategyError,
    StrategyEvent, Transcript,
};
use crate::numerics::rational::{floor_int, fmt_rational, pow_int};
use crate::numerics::{first_window_hit, floor_log, is_log_rational, rat, LogExpr, Rational};

#[derive(Clone, Debug)]
pub struct ThreeBa {
    params: GameParams,
}

impl ThreeBa {
    /// Requires `βγ_A < γ_B`, `(1−αβ)/(αγ_B) ≥ 9β/(1−β)`, `αβ > 1/7` and
    /// `log₃(αβ)` irrational.
    pub fn new(params: GameParams) -> Result<Self, StrategyError> {
        let hyp = |m: String| Err(StrategyError::Hypothesis(m));
        let (ga, gb) = (params.gamma_a(), params.gamma_b());
        if params.beta() * &ga >= gb {
            return hyp(format!("3ba needs beta*gamma_A < gamma_B at {params}"));
        }
        let one = rat(1, 1);
        if Self::opening_length(&params) < rat(9, 1) * params.beta() / (&one - params.beta()) {
            return hyp(format!(
                "3ba needs (1-ab)/(a*gamma_B) >= 9b/(1-b) at {params}"
            ));
        }
        if params.product() <= rat(1, 7) {
            return hyp(format!("3ba needs alpha*beta > 1/7 at {params}"));
        }
        if let Some(r) = is_log_rational(3, &params.product())? {
            return hyp(format!(
                "log_3(alpha*beta) = {} is rational",
                fmt_rational(&r)
            ));
        }
        Ok(ThreeBa { params })
    }

    /// `K = (1−αβ)/(αγ_B)`.
    pub fn opening_length(params: &GameParams) -> Rational {
        (rat(1, 1) - params.product()) / (params.alpha() * params.gamma_b())
    }

    /// `ε = (γ_B − βγ_A)/2`.
    pub fn epsilon(&self) -> Rational {
        (self.params.gamma_b() - self.params.beta() * self.params.gamma_a()) / rat(2, 1)
    }

    /// `[0, K]`.
    pub fn opening(&self) -> Interval {
        Interval::new(rat(0, 1), Self::opening_length(&self.params)).expect("K > 0")
    }
}

#[derive(Debug)]
enum Phase {
    Waiting {
        t: u64,
    },
    /// `B_round` was centered at `m/3^n`.
    Centered {
        n: i64,
        point: Rational,
    },
    /// Steering toward `point = m/3^n` until inside its open sixth-neighborhood.
    Chasing {
        n: i64,
        point: Rational,
    },
}

struct ThreeBaPlayer {
    params: GameParams,
    k: Rational,
    xi: LogExpr,
    window: Rational,
    phase: Phase,
    events: Vec<StrategyEvent>,
}

impl Strategy for ThreeBa {
    fn name(&self) -> String {
        "3ba".into()
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
        let xi = LogExpr::log(3, self.params.product())?;
        let window = log_window(3, &(rat(1, 1) + self.epsilon()))?;
        Ok(Box::new(ThreeBaPlayer {
            params: self.params.clone(),
            k: Self::opening_length(&self.params),
            xi,
            window,
            phase: Phase::Waiting { t: 0 },
            events: Vec::new(),
        }))
    }
}

/// Whether `iv ⊆ ((m − 1/6)/3^n, (m + 1/6)/3^n)` for `point = m/3^n`.
pub fn in_sixth_neighborhood(iv: &Interval, point: &Rational, n: i64) -> bool {
    let r = pow_int(3, -n) / rat(6, 1);
    iv.lo() > &(point - &r) && iv.hi() < &(point + r)
}

impl ThreeBaPlayer {
    /// Next Bob index `t ≥ from` whose length `|B_t| = K(αβ)^t` is in the window.
    fn schedule(&self, from: usize) -> Result<Phase, StrategyError> {
        let zero = LogExpr::constant(rat(0, 1));
        let t = first_window_hit(
            &self.xi,
            &zero,
            &rat(0, 1),
            &self.window,
            from.max(1) as u64,
        )?;
        Ok(Phase::Waiting { t })
    }

    /// `n ≥ 1` with `K/3^(n+2) ≤ len < (1+ε)K/3^(n+2)`, checked exactly.
    fn level_for(&self, len: &Rational) -> Result<Option<i64>, StrategyError> {
        let n = -floor_log(3, &(len / &self.k))? - 2;
        let base = &self.k * pow_int(3, -(n + 2));
        let eps = (self.params.gamma_b() - self.params.beta() * self.params.gamma_a()) / rat(2, 1);
        let ok = n >= 1 && len >= &base && len < &(base * (rat(1, 1) + eps));
        Ok(ok.then_some(n))
    }

    /// `|B|γ_A/(2(1−αβ))`: the most the center can still be pushed.
    fn drift(&self, len: &Rational) -> Rational {
        len * self.params.gamma_a() / (rat(2, 1) * (rat(1, 1) - self.params.product()))
    }

    /// The move after centering: toward `m/3^n` when that lands strictly
    /// within the sixth-radius minus the drift, otherwise toward the better
    /// of `m/3^n ± 1/3^(n+1)` under the same test one level down.
    fn targeting_move(
        &self,
        a: &Interval,
        len: &Rational,
        n: i64,
        point: &Rational,
    ) -> Result<(Interval, i64, Rational), StrategyError> {
        let drift = self.drift(len);
        let fits = |mv: &Interval, target: &Rational, level: i64| {
            (mv.center() - target).abs() < pow_int(3, -level) / rat(6, 1) - &drift
        };
        let mv = toward(a, len, point)?;
        if fits(&mv, point, n) {
            return Ok((mv, n, point.clone()));
        }
        let step = pow_int(3, -(n + 1));
        let mut best: Option<(Rational, Interval, Rational)> = None;
        for target in [point - &step, point + &step] {
            let mv = toward(a, len, &target)?;
            if fits(&mv, &target, n + 1) {
                let d = (mv.center() - &target).abs();
                if best.as_ref().is_none_or(|(bd, _, _)| &d < bd) {
                    best = Some((d, mv, target));
                }
            }
        }
        let (_, mv, target) = best.ok_or_else(|| {
            StrategyError::Internal(format!(
                "neither targeting mode is available inside {a} at level {n}"
            ))
        })?;
        Ok((mv, n + 1, target))
    }
}

impl Player for ThreeBaPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let Some(len) = next_length(t) else {
            self.phase = self.schedule(1)?;
            return Ok(Interval::new(rat(0, 1), self.k.clone())?);
        };
        let round = round_of(t);
        let a = last_move(t)?;
        let mv = match &self.phase {
            Phase::Waiting { t } if *t as usize == round => match self.level_for(&len)? {
                Some(n) => {
                    let (lo, hi) = center_range(a, &len);
                    let point =
                        nearest_grid_point_in(&a.center(), &lo, &hi, 3, n).ok_or_else(|| {
                            StrategyError::Internal(format!(
                                "no center m/3^{n} available inside {a}"
                            ))
                        })?;
                    self.events.push(StrategyEvent::Scheduled { round, n });
                    self.phase = Phase::Centered {
                        n,
                        point: point.clone(),
                    };
                    Interval::centered(&point, &len)?
                }
                None => {
                    self.phase = self.schedule(round + 1)?;
                    a.concentric(&len)?
                }
            },
            Phase::Waiting { .. } => a.concentric(&len)?,
            Phase::Centered { n, point } => {
                let (mv, n, point) = self.targeting_move(a, &len, *n, point)?;
                self.phase = Phase::Chasing { n, point };
                mv
            }
            Phase::Chasing { point, .. } => toward(a, &len, point)?,
        };
        if let Phase::Chasing { n, point } = &self.phase {
            if in_sixth_neighborhood(&mv, point, *n) {
                let m = floor_int(&(point * pow_int(3, *n)));
                self.events.push(StrategyEvent::ThreeBaVisit {
                    round,
                    n: *n,
                    m: m.to_string(),
                });
                self.phase = self.schedule(round + 1)?;
            }
        }
        Ok(mv)
    }

    fn drain_events(&mut self) -> Vec<StrategyEvent> {
        std::mem::take(&mut self.events)
    }
}
