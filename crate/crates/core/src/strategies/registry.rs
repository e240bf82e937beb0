//! Strategies by name.
//!
//! | spec | meaning |
//! |---|---|
//! | `center` | concentric moves; opens `[0, 1]` |
//! | `random`, `random:extreme` | seeded random moves |
//! | `digit-forcer` | zero forcing (Alice) or its mirror, forcing ones (Bob) |
//! | `chaser[:POINT[:left\|right\|nearest]]` | hold the center, or chase `POINT` |
//! | `bba-targeter:B:C` | Bob, base-`B` approximation targets |
//! | `ba-targeter:C` | Alice, dyadic third-point strategy |
//! | `3ba` | Bob, ternary sixth-neighborhood targets |
//! | `scale:M:K:INNER` | Bob moves times `M^K` |
//! | `translate:M:K:INNER` | Bob moves plus `M^K` |
//! | `shrink-beta:BETA:INNER` | `INNER` plays `(αβ/BETA, BETA)` |
//! | `inflate:EPS:LO,HI:INNER` | `INNER` plays `(α/(1+EPS), β(1+EPS))`; opens at `[LO, HI]` |
//! | `retarget:M:EPS:LO,HI:INNER` | as `inflate`, via rescaling and shifting |
//! | `mirror:INNER` | Bob from a positional Alice `INNER` of the swapped game |
//! | `shift:XI:INNER` | moves plus `XI` |
//!
//! Numbers are integers or `p/q`. `INNER` is itself a spec.

use std::sync::Arc;

use super::{
    Affine, BaTargeter, BbaTargeter, Center, ChaseSide, ChaseTarget, Chaser, DigitForcer, Inflate,
};
use super::{Mirror, Random, Retarget, ShrinkBeta, ThreeBa};
use crate::game::{GameParams, Interval, Side, Strategy, StrategyError};
use crate::numerics::{parse_rational, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("bad strategy spec {spec:?}: {reason}")]
    Syntax { spec: String, reason: String },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

fn syntax(spec: &str, reason: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn number(spec: &str, text: &str) -> Result<Rational, SpecError> {
    parse_rational(text).map_err(|e| syntax(spec, e.to_string()))
}

fn integer<T: std::str::FromStr>(spec: &str, text: &str) -> Result<T, SpecError> {
    text.parse()
        .map_err(|_| syntax(spec, format!("expected an integer, got {text:?}")))
}

fn interval(spec: &str, text: &str) -> Result<Interval, SpecError> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| syntax(spec, "expected LO,HI"))?;
    Interval::new(number(spec, lo)?, number(spec, hi)?).map_err(|e| syntax(spec, e.to_string()))
}

/// Splits `spec` into exactly `n` colon-separated fields, the last taking
/// the remainder.
fn fields<'a>(spec: &'a str, n: usize, usage: &str) -> Result<Vec<&'a str>, SpecError> {
    let parts: Vec<&str> = spec.splitn(n, ':').collect();
    if parts.len() != n || parts.iter().any(|p| p.is_empty()) {
        return Err(syntax(spec, format!("expected {usage}")));
    }
    Ok(parts)
}

fn inflated_inner_params(
    spec: &str,
    params: &GameParams,
    eps: &Rational,
) -> Result<GameParams, SpecError> {
    let f = rat(1, 1) + eps;
    GameParams::new(params.alpha() / &f, params.beta() * f)
        .map_err(|e| syntax(spec, format!("no inner game for eps: {e}")))
}

/// The strategy named by `spec` for `side` of the `params` game.
pub fn build(spec: &str, params: &GameParams, side: Side) -> Result<Arc<dyn Strategy>, SpecError> {
    let head = spec.split(':').next().unwrap_or_default();
    let s: Arc<dyn Strategy> = match head {
        "center" if spec == "center" => Arc::new(Center),
        "random" => match spec {
            "random" => Arc::new(Random::default()),
            "random:extreme" => Arc::new(Random { extreme: true }),
            _ => return Err(syntax(spec, "expected random or random:extreme")),
        },
        "digit-forcer" if spec == "digit-forcer" => match side {
            Side::Alice => Arc::new(DigitForcer::new(params.clone())?),
            Side::Bob => Arc::new(Mirror::new(Arc::new(DigitForcer::new(params.swapped())?))?),
        },
        "chaser" => {
            let parts: Vec<&str> = spec.split(':').collect();
            let target = match parts.as_slice() {
                ["chaser"] => ChaseTarget::Hold,
                ["chaser", point] => ChaseTarget::Fixed {
                    point: number(spec, point)?,
                    side: ChaseSide::Nearest,
                },
                ["chaser", point, pref] => {
                    let pref = match *pref {
                        "left" => ChaseSide::Left,
                        "right" => ChaseSide::Right,
                        "nearest" => ChaseSide::Nearest,
                        other => {
                            return Err(syntax(spec, format!("unknown side preference {other:?}")))
                        }
                    };
                    ChaseTarget::Fixed {
                        point: number(spec, point)?,
                        side: pref,
                    }
                }
                _ => return Err(syntax(spec, "expected chaser[:POINT[:SIDE]]")),
            };
            Arc::new(Chaser::new(side, target, params.clone())?)
        }
        "bba-targeter" => {
            let f = fields(spec, 3, "bba-targeter:B:C")?;
            Arc::new(BbaTargeter::new(
                integer(spec, f[1])?,
                number(spec, f[2])?,
                params.clone(),
            )?)
        }
        "ba-targeter" => {
            let f = fields(spec, 2, "ba-targeter:C")?;
            Arc::new(BaTargeter::new(number(spec, f[1])?, params.clone())?)
        }
        "3ba" if spec == "3ba" => Arc::new(ThreeBa::new(params.clone())?),
        "scale" | "translate" => {
            let f = fields(spec, 4, "scale|translate:M:K:INNER")?;
            let (m, k) = (integer(spec, f[1])?, integer(spec, f[2])?);
            let inner = build(f[3], params, side)?;
            if head == "scale" {
                Arc::new(Affine::scale(inner, m, k)?)
            } else {
                Arc::new(Affine::translate(inner, m, k)?)
            }
        }
        "shift" => {
            let f = fields(spec, 3, "shift:XI:INNER")?;
            Arc::new(Affine::shift(
                build(f[2], params, side)?,
                number(spec, f[1])?,
            ))
        }
        "mirror" => {
            let f = fields(spec, 2, "mirror:INNER")?;
            Arc::new(Mirror::new(build(f[1], &params.swapped(), Side::Alice)?)?)
        }
        "shrink-beta" => {
            let f = fields(spec, 3, "shrink-beta:BETA:INNER")?;
            let beta = number(spec, f[1])?;
            let inner_params = GameParams::new(params.product() / &beta, beta)
                .map_err(|e| syntax(spec, format!("no inner game for BETA: {e}")))?;
            let inner = build(f[2], &inner_params, Side::Bob)?;
            Arc::new(ShrinkBeta::new(inner, inner_params, params.beta().clone())?)
        }
        "inflate" => {
            let f = fields(spec, 4, "inflate:EPS:LO,HI:INNER")?;
            let eps = number(spec, f[1])?;
            let inner_params = inflated_inner_params(spec, params, &eps)?;
            let inner = build(f[3], &inner_params, Side::Bob)?;
            Arc::new(Inflate::new(
                inner,
                inner_params,
                eps,
                interval(spec, f[2])?,
            )?)
        }
        "retarget" => {
            let f = fields(spec, 5, "retarget:M:EPS:LO,HI:INNER")?;
            let eps = number(spec, f[2])?;
            let inner_params = inflated_inner_params(spec, params, &eps)?;
            let inner = build(f[4], &inner_params, Side::Bob)?;
            Arc::new(Retarget::new(
                inner,
                inner_params,
                integer(spec, f[1])?,
                interval(spec, f[3])?,
                eps,
            )?)
        }
        _ => return Err(syntax(spec, "unknown strategy")),
    };
    if !s.sides().allows(side) {
        return Err(StrategyError::WrongSide {
            name: s.name(),
            side,
        }
        .into());
    }
    Ok(s)
}
