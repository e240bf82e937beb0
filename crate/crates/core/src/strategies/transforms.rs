//! Strategy transformations. Each transformed player runs the inner
//! strategy on a shadow game and translates moves between the two games.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::common::unit_interval;
use crate::game::{
    ensure_params, ensure_side, GameParams, Interval, Player, Side, Sides, Strategy, StrategyError,
    Transcript,
};
use crate::numerics::rational::{fmt_rational, pow_int, round_half_down, serde_rational};
use crate::numerics::{first_window_hit, floor_log, is_log_rational, rat, LogExpr, Rational};

/// Translation of moves between an outer game and the inner shadow game.
trait MoveMap: Send {
    /// The shadow image of an opponent move.
    fn pull_opponent(
        &self,
        outer: &Interval,
        shadow: &Transcript,
    ) -> Result<Interval, StrategyError>;
    /// The shadow image of one of our own moves we did not produce, if the
    /// map can recover it.
    fn pull_own(&self, outer: &Interval) -> Option<Interval>;
    /// The outer move for the inner move at outer index `index`.
    fn push_own(&self, inner: &Interval, index: usize) -> Result<Interval, StrategyError>;
}

/// Runs an inner player on a shadow transcript; outer index `j` is shadow
/// index `offset + j`.
struct ShadowPlayer {
    inner: Box<dyn Player>,
    shadow: Transcript,
    offset: usize,
    side: Side,
    synced: usize,
    last_own: Option<(usize, Interval)>,
    map: Box<dyn MoveMap>,
}

impl ShadowPlayer {
    fn new(inner: Box<dyn Player>, shadow: Transcript, side: Side, map: Box<dyn MoveMap>) -> Self {
        let offset = shadow.len().saturating_sub(1);
        ShadowPlayer {
            inner,
            shadow,
            offset,
            side,
            synced: 0,
            last_own: None,
            map,
        }
    }

    fn sync(&mut self, outer: &Transcript) -> Result<(), StrategyError> {
        for (j, mv) in outer.moves().iter().enumerate().skip(self.synced) {
            if self.shadow.len() > self.offset + j {
                if mv.player == self.side
                    && self
                        .last_own
                        .as_ref()
                        .is_some_and(|(i, m)| *i == j && m != &mv.interval)
                {
                    return Err(StrategyError::Internal(format!(
                        "outer move {j} differs from the one produced"
                    )));
                }
                continue;
            }
            let image = if mv.player == self.side {
                self.map.pull_own(&mv.interval).ok_or_else(|| {
                    StrategyError::Internal(format!(
                        "cannot recover the shadow of externally played move {j}"
                    ))
                })?
            } else {
                self.map.pull_opponent(&mv.interval, &self.shadow)?
            };
            self.shadow.push(image)?;
        }
        self.synced = outer.len();
        Ok(())
    }
}

impl Player for ShadowPlayer {
    fn respond(&mut self, outer: &Transcript) -> Result<Interval, StrategyError> {
        self.sync(outer)?;
        let j = outer.len();
        let inner_move = match self.shadow.moves().get(self.offset + j) {
            Some(mv) => mv.interval.clone(),
            None => {
                let mv = self.inner.respond(&self.shadow)?;
                self.shadow.push(mv.clone())?;
                mv
            }
        };
        let out = self.map.push_own(&inner_move, j)?;
        self.last_own = Some((j, out.clone()));
        Ok(out)
    }
}

/// `x ↦ a·x + b` with `a > 0`.
struct AffineMap {
    a: Rational,
    b: Rational,
}

impl MoveMap for AffineMap {
    fn pull_opponent(&self, outer: &Interval, _: &Transcript) -> Result<Interval, StrategyError> {
        Ok(self.pull(outer))
    }
    fn pull_own(&self, outer: &Interval) -> Option<Interval> {
        Some(self.pull(outer))
    }
    fn push_own(&self, inner: &Interval, _: usize) -> Result<Interval, StrategyError> {
        Ok(inner.affine(&self.a, &self.b))
    }
}

impl AffineMap {
    fn pull(&self, outer: &Interval) -> Interval {
        let inv = rat(1, 1) / &self.a;
        outer.affine(&inv, &(-&self.b * &inv))
    }
}

/// The inner strategy conjugated by `x ↦ a·x + b`: covers scaling by `m^k`,
/// translation by `m^k` and shifting by `ξ`.
#[derive(Clone, Debug)]
pub struct Affine {
    inner: Arc<dyn Strategy>,
    a: Rational,
    b: Rational,
    label: String,
}

impl Affine {
    fn check_base(m: u32) -> Result<(), StrategyError> {
        if m < 2 {
            return Err(StrategyError::Hypothesis(format!(
                "base must be at least 2, got {m}"
            )));
        }
        Ok(())
    }

    fn bob_inner(inner: &Arc<dyn Strategy>) -> Result<(), StrategyError> {
        if !inner.sides().allows(Side::Bob) {
            return Err(StrategyError::WrongSide {
                name: inner.name(),
                side: Side::Bob,
            });
        }
        Ok(())
    }

    /// Bob's moves multiplied by `m^k`.
    pub fn scale(inner: Arc<dyn Strategy>, m: u32, k: i64) -> Result<Self, StrategyError> {
        Self::check_base(m)?;
        Self::bob_inner(&inner)?;
        let label = format!("scale:{m}:{k}:{}", inner.name());
        Ok(Affine {
            inner,
            a: pow_int(m, k),
            b: rat(0, 1),
            label,
        })
    }

    /// Bob's moves translated by `m^k`.
    pub fn translate(inner: Arc<dyn Strategy>, m: u32, k: i64) -> Result<Self, StrategyError> {
        Self::check_base(m)?;
        Self::bob_inner(&inner)?;
        let label = format!("translate:{m}:{k}:{}", inner.name());
        Ok(Affine {
            inner,
            a: rat(1, 1),
            b: pow_int(m, k),
            label,
        })
    }

    /// Moves translated by `ξ`, for either side.
    pub fn shift(inner: Arc<dyn Strategy>, xi: Rational) -> Self {
        let label = format!("shift:{}:{}", fmt_rational(&xi), inner.name());
        Affine {
            inner,
            a: rat(1, 1),
            b: xi,
            label,
        }
    }

    pub fn factor(&self) -> &Rational {
        &self.a
    }

    pub fn offset(&self) -> &Rational {
        &self.b
    }
}

impl Strategy for Affine {
    fn name(&self) -> String {
        self.label.clone()
    }
    fn sides(&self) -> Sides {
        self.inner.sides()
    }
    fn is_positional(&self) -> bool {
        self.inner.is_positional()
    }
    fn start(
        &self,
        params: &GameParams,
        side: Side,
        seed: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_side(self.inner.as_ref(), side)?;
        let inner = self.inner.start(params, side, seed)?;
        let map = AffineMap {
            a: self.a.clone(),
            b: self.b.clone(),
        };
        Ok(Box::new(ShadowPlayer::new(
            inner,
            Transcript::new(params.clone()),
            side,
            Box::new(map),
        )))
    }
}

/// `Σ_{i=1..K} 2^(−2^i)`, a rational truncation of a shift constant whose
/// binary digits are one exactly at the positions `2^i`.
pub fn shift_xi_truncation(terms: u32) -> Rational {
    (1..=terms)
        .map(|i| pow_int(2, -(1i64 << i)))
        .fold(rat(0, 1), |acc, x| acc + x)
}

/// Replaces Alice's moves by concentric ones of length `α|B|`.
struct ShrinkMap {
    inner_alpha: Rational,
}

impl MoveMap for ShrinkMap {
    fn pull_opponent(
        &self,
        outer: &Interval,
        shadow: &Transcript,
    ) -> Result<Interval, StrategyError> {
        let b = shadow
            .last()
            .ok_or_else(|| StrategyError::Internal("Alice move before an opening".into()))?;
        Ok(outer.concentric(&(&self.inner_alpha * b.length()))?)
    }
    fn pull_own(&self, outer: &Interval) -> Option<Interval> {
        Some(outer.clone())
    }
    fn push_own(&self, inner: &Interval, _: usize) -> Result<Interval, StrategyError> {
        Ok(inner.clone())
    }
}

/// A Bob strategy for `(αβ/β′, β′)` from one for `(α, β)`, `β′ < β`.
#[derive(Clone, Debug)]
pub struct ShrinkBeta {
    inner: Arc<dyn Strategy>,
    inner_params: GameParams,
    outer_params: GameParams,
}

impl ShrinkBeta {
    pub fn new(
        inner: Arc<dyn Strategy>,
        inner_params: GameParams,
        beta_prime: Rational,
    ) -> Result<Self, StrategyError> {
        Affine::bob_inner(&inner)?;
        if beta_prime <= Rational::zero() || &beta_prime >= inner_params.beta() {
            return Err(StrategyError::Hypothesis(format!(
                "shrink-beta needs 0 < beta' < {}, got {}",
                fmt_rational(inner_params.beta()),
                fmt_rational(&beta_prime)
            )));
        }
        let alpha_prime = inner_params.product() / &beta_prime;
        let outer_params = GameParams::new(alpha_prime, beta_prime).map_err(|e| {
            StrategyError::Hypothesis(format!("shrink-beta target parameters: {e}"))
        })?;
        Ok(ShrinkBeta {
            inner,
            inner_params,
            outer_params,
        })
    }

    pub fn outer_params(&self) -> &GameParams {
        &self.outer_params
    }
}

fn shrink_player(inner: Box<dyn Player>, inner_params: &GameParams) -> Box<dyn Player> {
    let map = ShrinkMap {
        inner_alpha: inner_params.alpha().clone(),
    };
    Box::new(ShadowPlayer::new(
        inner,
        Transcript::new(inner_params.clone()),
        Side::Bob,
        Box::new(map),
    ))
}

impl Strategy for ShrinkBeta {
    fn name(&self) -> String {
        format!(
            "shrink-beta:{}:{}",
            fmt_rational(self.inner_params.beta()),
            self.inner.name()
        )
    }
    fn sides(&self) -> Sides {
        Sides::Bob
    }
    fn start(
        &self,
        params: &GameParams,
        _: Side,
        seed: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_params(&self.outer_params, params)?;
        let inner = self.inner.start(&self.inner_params, Side::Bob, seed)?;
        Ok(shrink_player(inner, &self.inner_params))
    }
}

/// Opens at `T`, then plays concentric shrinks by `1/(1+ε′)` of the inner
/// replies; Alice's moves pass through.
struct InflateMap {
    opening: Interval,
    divisor: Rational,
}

impl MoveMap for InflateMap {
    fn pull_opponent(&self, outer: &Interval, _: &Transcript) -> Result<Interval, StrategyError> {
        Ok(outer.clone())
    }
    fn pull_own(&self, _: &Interval) -> Option<Interval> {
        None
    }
    fn push_own(&self, inner: &Interval, index: usize) -> Result<Interval, StrategyError> {
        if index == 0 {
            return Ok(self.opening.clone());
        }
        Ok(inner.concentric(&(inner.length() / &self.divisor))?)
    }
}

fn inflated_params(params: &GameParams, eps: &Rational) -> Result<GameParams, StrategyError> {
    let f = rat(1, 1) + eps;
    GameParams::new(params.alpha() * &f, params.beta() / f)
        .map_err(|e| StrategyError::Hypothesis(format!("inflated parameters: {e}")))
}

/// `ε′` with `|T| = |B_0|/(1+ε′)`, after checking `T ⊆ B_0` and `ε′ ≤ ε`.
fn inflate_slack(
    b0: &Interval,
    target: &Interval,
    eps: &Rational,
) -> Result<Rational, StrategyError> {
    if !b0.contains(target) {
        return Err(StrategyError::Hypothesis(format!(
            "inflate: {target} is not inside the opening {b0}"
        )));
    }
    let eps_prime = b0.length() / target.length() - rat(1, 1);
    if &eps_prime > eps {
        return Err(StrategyError::Hypothesis(format!(
            "inflate: |T|(1+eps) < |B_0| ({} > {})",
            fmt_rational(&eps_prime),
            fmt_rational(eps)
        )));
    }
    Ok(eps_prime)
}

/// Turns a Bob player for `params` whose shadow is `shadow` (ending at the
/// opening `B_0`) into one for the `ε`-inflated game opening at `target`.
fn inflate_player(
    inner: Box<dyn Player>,
    shadow: Transcript,
    eps: &Rational,
    target: &Interval,
) -> Result<Box<dyn Player>, StrategyError> {
    let params = shadow.params().clone();
    let b0 = shadow
        .last()
        .ok_or_else(|| StrategyError::Internal("inflate needs an opening".into()))?;
    let eps_prime = inflate_slack(b0, target, eps)?;
    let map = InflateMap {
        opening: target.clone(),
        divisor: rat(1, 1) + &eps_prime,
    };
    let player: Box<dyn Player> =
        Box::new(ShadowPlayer::new(inner, shadow, Side::Bob, Box::new(map)));
    if eps_prime == *eps {
        return Ok(player);
    }
    Ok(shrink_player(
        player,
        &inflated_params(&params, &eps_prime)?,
    ))
}

/// A Bob strategy for `((1+ε)α, β/(1+ε))` opening at `T ⊆ B_0` with
/// `|T|(1+ε) ≥ |B_0|`.
#[derive(Clone, Debug)]
pub struct Inflate {
    inner: Arc<dyn Strategy>,
    inner_params: GameParams,
    outer_params: GameParams,
    eps: Rational,
    target: Interval,
}

fn opening_of(
    inner: &dyn Strategy,
    params: &GameParams,
    seed: u64,
) -> Result<(Box<dyn Player>, Transcript), StrategyError> {
    let mut player = inner.start(params, Side::Bob, seed)?;
    let mut shadow = Transcript::new(params.clone());
    shadow.push(player.respond(&shadow)?)?;
    Ok((player, shadow))
}

impl Inflate {
    pub fn new(
        inner: Arc<dyn Strategy>,
        inner_params: GameParams,
        eps: Rational,
        target: Interval,
    ) -> Result<Self, StrategyError> {
        Affine::bob_inner(&inner)?;
        if eps <= Rational::zero() {
            return Err(StrategyError::Hypothesis(format!(
                "inflate needs eps > 0, got {}",
                fmt_rational(&eps)
            )));
        }
        let outer_params = inflated_params(&inner_params, &eps)?;
        let (_, shadow) = opening_of(inner.as_ref(), &inner_params, 0)?;
        inflate_slack(shadow.last().expect("opening"), &target, &eps)?;
        Ok(Inflate {
            inner,
            inner_params,
            outer_params,
            eps,
            target,
        })
    }

    pub fn outer_params(&self) -> &GameParams {
        &self.outer_params
    }
}

impl Strategy for Inflate {
    fn name(&self) -> String {
        format!(
            "inflate:{}:{},{}:{}",
            fmt_rational(&self.eps),
            fmt_rational(self.target.lo()),
            fmt_rational(self.target.hi()),
            self.inner.name()
        )
    }
    fn sides(&self) -> Sides {
        Sides::Bob
    }
    fn start(
        &self,
        params: &GameParams,
        _: Side,
        seed: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_params(&self.outer_params, params)?;
        let (player, shadow) = opening_of(self.inner.as_ref(), &self.inner_params, seed)?;
        inflate_player(player, shadow, &self.eps, &self.target)
    }
}

/// The stages chosen to open an inner strategy's game at an arbitrary `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetargetReport {
    /// Scale exponent: the shadow is multiplied by `m^k`.
    pub k: i64,
    /// Inner round whose move `B_n` becomes the rescaled opening.
    pub n: u64,
    /// Shift `q/m^k2` aligning the rescaled opening over `T`.
    pub k2: i64,
    pub q: String,
    #[serde(with = "serde_rational")]
    pub eps_prime: Rational,
    /// The opening before inflation: `m^k·B_n + q/m^k2`.
    pub pre_inflate_opening: Interval,
}

/// A Bob strategy for `((1+ε)α, β/(1+ε))` opening exactly at `T`, built from
/// a Bob strategy for `(α, β)` by rescaling, shifting and inflating.
#[derive(Clone, Debug)]
pub struct Retarget {
    inner: Arc<dyn Strategy>,
    inner_params: GameParams,
    outer_params: GameParams,
    m: u32,
    eps: Rational,
    target: Interval,
}

struct Plan {
    report: RetargetReport,
    player: Box<dyn Player>,
    shadow: Transcript,
    a: Rational,
    b: Rational,
}

impl Retarget {
    pub fn new(
        inner: Arc<dyn Strategy>,
        inner_params: GameParams,
        m: u32,
        target: Interval,
        eps: Rational,
    ) -> Result<Self, StrategyError> {
        Affine::check_base(m)?;
        Affine::bob_inner(&inner)?;
        if let Some(r) = is_log_rational(m, &inner_params.product())? {
            return Err(StrategyError::Hypothesis(format!(
                "retarget needs log_{m}(alpha*beta) irrational, it equals {}",
                fmt_rational(&r)
            )));
        }
        if eps <= Rational::zero() {
            return Err(StrategyError::Hypothesis(format!(
                "retarget needs eps > 0, got {}",
                fmt_rational(&eps)
            )));
        }
        let outer_params = inflated_params(&inner_params, &eps)?;
        let s = Retarget {
            inner,
            inner_params,
            outer_params,
            m,
            eps,
            target,
        };
        s.plan(0)?;
        Ok(s)
    }

    pub fn outer_params(&self) -> &GameParams {
        &self.outer_params
    }

    /// The composition chosen for the game started with `seed`.
    pub fn report(&self, seed: u64) -> Result<RetargetReport, StrategyError> {
        Ok(self.plan(seed)?.report)
    }

    fn plan(&self, seed: u64) -> Result<Plan, StrategyError> {
        let stage = |name: &str, e: StrategyError| match e {
            StrategyError::Hypothesis(msg) => {
                StrategyError::Hypothesis(format!("retarget/{name}: {msg}"))
            }
            other => other,
        };
        let (mut player, mut shadow) = opening_of(self.inner.as_ref(), &self.inner_params, seed)?;
        let b0 = shadow.last().expect("opening").clone();
        let (l, big_l) = (b0.length(), self.target.length());
        let one = rat(1, 1);
        if b0.contains(&self.target) && &big_l * (&one + &self.eps) >= l {
            let eps_prime = &l / &big_l - &one;
            let report = RetargetReport {
                k: 0,
                n: 0,
                k2: 0,
                q: "0".into(),
                eps_prime,
                pre_inflate_opening: b0,
            };
            return Ok(Plan {
                report,
                player,
                shadow,
                a: one,
                b: rat(0, 1),
            });
        }
        // Rescaling: n and k with 1 < m^k (αβ)^n l/L < 1+ε.
        let ab = self.inner_params.product();
        let xi = LogExpr::log(self.m, ab.clone())?;
        let chi = LogExpr::log(self.m, &l / &big_l)?;
        let window = super::common::log_window(self.m, &(&one + &self.eps))
            .map_err(|e| stage("scale", e))?;
        let mut from = 0u64;
        let (n, k, scaled_len) = loop {
            let n = first_window_hit(&xi, &chi, &rat(0, 1), &window, from)?;
            let ratio = crate::numerics::rational::pow_rat(&ab, n as i64) * &l / &big_l;
            let k = -floor_log(self.m, &ratio)?;
            let r = pow_int(self.m, k) * &ratio;
            if r > one && r < &one + &self.eps {
                break (n, k, r * &big_l);
            }
            from = n + 1;
        };
        // B_1 .. B_n against a centering Alice, continuing the same player.
        let alpha = self.inner_params.alpha().clone();
        for _ in 0..n {
            let b = shadow.last().expect("nonempty").clone();
            shadow.push(b.concentric(&(&alpha * b.length()))?)?;
            shadow.push(player.respond(&shadow)?)?;
        }
        let a = pow_int(self.m, k);
        let scaled = shadow.last().expect("nonempty").scale(&a);
        debug_assert_eq!(scaled.length(), scaled_len);
        let eps_prime = &scaled_len / &big_l - &one;
        // Shift: 1/m^k2 < ε′L/2, q/m^k2 ≈ t − b0.
        let k2 = floor_log(self.m, &(rat(2, 1) / (&eps_prime * &big_l)))? + 1;
        let q = round_half_down(&((self.target.center() - scaled.center()) * pow_int(self.m, k2)));
        let b = Rational::from_integer(q.clone()) * pow_int(self.m, -k2);
        let opening = scaled.translate(&b);
        if !opening.contains(&self.target) {
            return Err(StrategyError::Internal(format!(
                "retarget: shifted opening {opening} misses {}",
                self.target
            )));
        }
        let report = RetargetReport {
            k,
            n,
            k2,
            q: q.to_string(),
            eps_prime,
            pre_inflate_opening: opening,
        };
        Ok(Plan {
            report,
            player,
            shadow,
            a,
            b,
        })
    }
}

impl Strategy for Retarget {
    fn name(&self) -> String {
        format!(
            "retarget:{}:{}:{},{}:{}",
            self.m,
            fmt_rational(&self.eps),
            fmt_rational(self.target.lo()),
            fmt_rational(self.target.hi()),
            self.inner.name()
        )
    }
    fn sides(&self) -> Sides {
        Sides::Bob
    }
    fn start(
        &self,
        params: &GameParams,
        _: Side,
        seed: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        ensure_params(&self.outer_params, params)?;
        let plan = self.plan(seed)?;
        let affine_shadow = Transcript::from_intervals(
            self.inner_params.clone(),
            [plan.report.pre_inflate_opening.clone()],
        )?;
        let affine: Box<dyn Player> = Box::new(ShadowPlayer::new(
            plan.player,
            plan.shadow,
            Side::Bob,
            Box::new(AffineMap {
                a: plan.a,
                b: plan.b,
            }),
        ));
        inflate_player(affine, affine_shadow, &self.eps, &self.target)
    }
}

/// A Bob strategy from a positional Alice strategy for the swapped game:
/// `B_0 = −A([−1, 0])` and `B_(n+1) = −A(−A_n)`.
#[derive(Clone, Debug)]
pub struct Mirror {
    inner: Arc<dyn Strategy>,
}

impl Mirror {
    pub fn new(inner: Arc<dyn Strategy>) -> Result<Self, StrategyError> {
        if !inner.sides().allows(Side::Alice) {
            return Err(StrategyError::WrongSide {
                name: inner.name(),
                side: Side::Alice,
            });
        }
        if !inner.is_positional() {
            return Err(StrategyError::Hypothesis(format!(
                "mirror needs a positional strategy, {} is not",
                inner.name()
            )));
        }
        Ok(Mirror { inner })
    }

    /// The virtual first interval the inner strategy answers to open.
    pub fn virtual_opening() -> Interval {
        unit_interval().negate()
    }
}

struct MirrorPlayer {
    inner: Box<dyn Player>,
    swapped: GameParams,
}

impl Strategy for Mirror {
    fn name(&self) -> String {
        format!("mirror:{}", self.inner.name())
    }
    fn sides(&self) -> Sides {
        Sides::Bob
    }
    fn is_positional(&self) -> bool {
        true
    }
    fn start(
        &self,
        params: &GameParams,
        _: Side,
        seed: u64,
    ) -> Result<Box<dyn Player>, StrategyError> {
        let swapped = params.swapped();
        let inner = self.inner.start(&swapped, Side::Alice, seed)?;
        Ok(Box::new(MirrorPlayer { inner, swapped }))
    }
}

impl Player for MirrorPlayer {
    fn respond(&mut self, t: &Transcript) -> Result<Interval, StrategyError> {
        let seen = match t.last() {
            None => Mirror::virtual_opening(),
            Some(a) => a.negate(),
        };
        let probe = Transcript::from_intervals(self.swapped.clone(), [seen])?;
        let reply = self.inner.respond(&probe)?;
        self.inner.drain_events();
        Ok(reply.negate())
    }
}

impl fmt::Display for RetargetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} n={} k2={} q={} eps'={} opening={}",
            self.k,
            self.n,
            self.k2,
            self.q,
            fmt_rational(&self.eps_prime),
            self.pre_inflate_opening
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::play;
    use crate::strategies::basic::{Center, Random};
    use crate::strategies::chaser::{ChaseTarget, Chaser};
    use crate::strategies::digit::DigitForcer;

    fn p(a: i64, b: i64, c: i64, d: i64) -> GameParams {
        GameParams::new(rat(a, b), rat(c, d)).unwrap()
    }

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn random_bob() -> Arc<dyn Strategy> {
        Arc::new(Random::default())
    }

    /// Pairs each transformed game with the inner game replayed against the
    /// pulled-back Alice moves.
    fn inner_replay(
        inner: &dyn Strategy,
        params: &GameParams,
        outer: &Transcript,
        seed: u64,
        pull: impl Fn(&Interval) -> Interval,
    ) -> Transcript {
        let mut player = inner
            .start(params, Side::Bob, crate::game::side_seeds(seed).0)
            .unwrap();
        let mut t = Transcript::new(params.clone());
        for (j, mv) in outer.moves().iter().enumerate() {
            if j % 2 == 0 {
                let own = player.respond(&t).unwrap();
                t.push(own).unwrap();
            } else {
                t.push(pull(&mv.interval)).unwrap();
            }
        }
        t
    }

    #[test]
    fn scale_identity() {
        let params = p(1, 3, 1, 2);
        for (m, k) in [(2, 3), (2, -1), (5, 0)] {
            let s = Affine::scale(random_bob(), m, k).unwrap();
            let outer = play(&params, &s, &Random::default(), 8, None, 11).unwrap();
            let f = pow_int(m, k);
            assert_eq!(outer.bob(0).unwrap(), &unit_interval().scale(&f));
            let inner = inner_replay(&Random::default(), &params, &outer, 11, |a| {
                a.scale(&(rat(1, 1) / &f))
            });
            let mapped = inner.map(params.clone(), |x| x.scale(&f)).unwrap();
            assert_eq!(mapped, outer);
        }
    }

    #[test]
    fn translate_identity() {
        let params = p(1, 3, 1, 2);
        let s = Affine::translate(random_bob(), 3, 2).unwrap();
        let outer = play(&params, &s, &Random::default(), 6, None, 4).unwrap();
        let inner = inner_replay(&Random::default(), &params, &outer, 4, |a| {
            a.translate(&rat(-9, 1))
        });
        for (x, y) in outer.intervals().zip(inner.intervals()) {
            assert_eq!(x.lo() - y.lo(), rat(9, 1));
            assert_eq!(x.hi() - y.hi(), rat(9, 1));
        }
        let back = Affine::translate(Arc::new(s), 3, 0).unwrap();
        let t = play(&params, &back, &Center, 2, None, 0).unwrap();
        assert_eq!(t.bob(0).unwrap(), &unit_interval().translate(&rat(10, 1)));
    }

    #[test]
    fn shift_identity_for_alice() {
        let params = p(1, 8, 1, 3);
        let forcer: Arc<dyn Strategy> = Arc::new(DigitForcer::new(params.clone()).unwrap());
        let xi = rat(1, 3);
        let shifted = Affine::shift(forcer.clone(), xi.clone());
        let outer = play(&params, &Random::default(), &shifted, 10, None, 2).unwrap();
        let mut player = forcer.start(&params, Side::Alice, 0).unwrap();
        for i in 0..10 {
            let b = outer.bob(i).unwrap().translate(&-&xi);
            let probe = Transcript::from_intervals(params.clone(), [b]).unwrap();
            let reply = player.respond(&probe).unwrap();
            assert_eq!(&reply.translate(&xi), outer.alice(i).unwrap());
        }
        let zero = Affine::shift(forcer.clone(), rat(0, 1));
        let a = play(&params, &Random::default(), &zero, 5, None, 9).unwrap();
        let b = play(&params, &Random::default(), forcer.as_ref(), 5, None, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn shift_truncations() {
        assert_eq!(shift_xi_truncation(0), rat(0, 1));
        assert_eq!(shift_xi_truncation(2), rat(1, 4) + rat(1, 16));
    }

    #[test]
    fn shrink_beta_replies_to_concentric_shrinks() {
        let inner_params = p(1, 4, 1, 2);
        let s = ShrinkBeta::new(random_bob(), inner_params.clone(), rat(1, 4)).unwrap();
        let outer_params = s.outer_params().clone();
        assert_eq!(outer_params, p(1, 2, 1, 4));
        assert!(ShrinkBeta::new(random_bob(), inner_params.clone(), rat(1, 2)).is_err());
        let outer = play(&outer_params, &s, &Random::default(), 6, None, 8).unwrap();
        let mut player = Random::default()
            .start(&inner_params, Side::Bob, crate::game::side_seeds(8).0)
            .unwrap();
        let mut shadow = Transcript::new(inner_params.clone());
        for j in 0..outer.len() {
            let mv = &outer.moves()[j].interval;
            if j % 2 == 0 {
                assert_eq!(&player.respond(&shadow).unwrap(), mv);
                shadow.push(mv.clone()).unwrap();
            } else {
                let b = shadow.last().unwrap().length();
                shadow
                    .push(mv.concentric(&(inner_params.alpha() * b)).unwrap())
                    .unwrap();
            }
        }
    }

    #[test]
    fn inflate_lengths_and_degenerate_case() {
        let inner_params = p(1, 4, 1, 2);
        let eps = rat(1, 1);
        let target = iv(rat(1, 4), rat(3, 4));
        let s = Inflate::new(
            random_bob(),
            inner_params.clone(),
            eps.clone(),
            target.clone(),
        )
        .unwrap();
        assert_eq!(s.outer_params(), &p(1, 2, 1, 4));
        let outer = play(s.outer_params(), &s, &Random::default(), 6, None, 1).unwrap();
        assert_eq!(outer.bob(0).unwrap(), &target);
        // ε′ = ε: replies are the inner's shrunk by 1/2 about their centers.
        let inner = inner_replay(&Random::default(), &inner_params, &outer, 1, |a| a.clone());
        for i in 1..=6 {
            let (x, y) = (outer.bob(i).unwrap(), inner.bob(i).unwrap());
            assert_eq!(x.center(), y.center());
            assert_eq!(x.length() * rat(2, 1), y.length());
        }
        assert!(Inflate::new(
            random_bob(),
            inner_params.clone(),
            rat(1, 2),
            target.clone()
        )
        .is_err());
        assert!(Inflate::new(
            random_bob(),
            inner_params.clone(),
            eps.clone(),
            iv(rat(1, 2), rat(3, 2))
        )
        .is_err());
        // ε′ = 0 < ε: Bob's moves equal the inner's replies to concentric shrinks.
        let whole = Inflate::new(
            random_bob(),
            inner_params.clone(),
            rat(1, 3),
            unit_interval(),
        )
        .unwrap();
        let t = play(whole.outer_params(), &whole, &Center, 4, None, 3).unwrap();
        assert_eq!(t.bob(0).unwrap(), &unit_interval());
        let center_inner = inner_replay(&Random::default(), &inner_params, &t, 3, |a| {
            a.concentric(&(a.length() * rat(3, 4))).unwrap()
        });
        for i in 0..=4 {
            assert_eq!(t.bob(i), center_inner.bob(i));
        }
    }

    #[test]
    fn retarget_degenerate_and_search() {
        let params = p(1, 3, 1, 2);
        let center_bob: Arc<dyn Strategy> =
            Arc::new(Chaser::new(Side::Bob, ChaseTarget::Hold, params.clone()).unwrap());
        let same = Retarget::new(
            center_bob.clone(),
            params.clone(),
            2,
            unit_interval(),
            rat(1, 10),
        )
        .unwrap();
        let r = same.report(0).unwrap();
        assert_eq!(
            (r.k, r.n, r.q.as_str(), r.eps_prime.clone()),
            (0, 0, "0", rat(0, 1))
        );

        let target = iv(rat(5, 3), rat(5, 3) + rat(1, 2));
        let s = Retarget::new(
            center_bob.clone(),
            params.clone(),
            2,
            target.clone(),
            rat(1, 10),
        )
        .unwrap();
        let r = s.report(0).unwrap();
        let scaled = pow_int(2, r.k) * pow_rat_ab(&params, r.n);
        assert!(scaled > rat(1, 2) && scaled < rat(11, 20), "{r}");
        assert!(r.pre_inflate_opening.contains(&target));
        let t = play(s.outer_params(), &s, &Random::default(), 10, None, 5).unwrap();
        assert_eq!(t.bob(0).unwrap(), &target);
        assert!(Retarget::new(center_bob, p(1, 2, 1, 2), 2, target, rat(1, 10)).is_err());
    }

    fn pow_rat_ab(params: &GameParams, n: u64) -> Rational {
        crate::numerics::rational::pow_rat(&params.product(), n as i64)
    }

    #[test]
    fn mirror_negates_inner_replies() {
        let params = p(1, 2, 1, 3);
        let m = Mirror::new(Arc::new(Center)).unwrap();
        let t = play(&params, &m, &Random::default(), 8, None, 6).unwrap();
        assert_eq!(t.bob(0).unwrap(), &iv(rat(1, 3), rat(2, 3)));
        for i in 0..8 {
            let a = t.alice(i).unwrap();
            assert_eq!(
                t.bob(i + 1).unwrap(),
                &a.negate()
                    .concentric(&(a.length() / rat(3, 1)))
                    .unwrap()
                    .negate()
            );
        }
        let chaser: Arc<dyn Strategy> =
            Arc::new(Chaser::new(Side::Alice, ChaseTarget::Hold, params.clone()).unwrap());
        assert!(Mirror::new(chaser).is_err());
    }
}
