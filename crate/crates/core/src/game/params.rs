use serde::{Deserialize, Serialize};

use crate::numerics::rational::{fmt_rational, serde_rational};
use crate::numerics::Rational;
use num_traits::{One, Zero};

use super::GameError;

/// The shrink ratios `(α, β)`, a point of the open unit square.
///
/// `γ_A` and `γ_B` are derived on demand so they can never go stale.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct GameParams {
    alpha: Rational,
    beta: Rational,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(with = "serde_rational")]
    alpha: Rational,
    #[serde(with = "serde_rational")]
    beta: Rational,
}

impl TryFrom<RawParams> for GameParams {
    type Error = GameError;
    fn try_from(raw: RawParams) -> Result<Self, GameError> {
        GameParams::new(raw.alpha, raw.beta)
    }
}

impl From<GameParams> for RawParams {
    fn from(p: GameParams) -> Self {
        RawParams {
            alpha: p.alpha,
            beta: p.beta,
        }
    }
}

fn in_unit(x: &Rational) -> bool {
    x > &Rational::zero() && x < &Rational::one()
}

impl GameParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self, GameError> {
        if !in_unit(&alpha) || !in_unit(&beta) {
            return Err(GameError::InvalidParams {
                alpha: fmt_rational(&alpha),
                beta: fmt_rational(&beta),
            });
        }
        Ok(GameParams { alpha, beta })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// `αβ`, the per-round shrink factor.
    pub fn product(&self) -> Rational {
        &self.alpha * &self.beta
    }

    /// `1 − 2α + αβ`, Bob's per-turn drift capacity.
    pub fn gamma_a(&self) -> Rational {
        Rational::one() - &self.alpha * Rational::from_integer(2.into()) + self.product()
    }

    /// `1 − 2β + αβ`, Alice's per-turn drift capacity.
    pub fn gamma_b(&self) -> Rational {
        Rational::one() - &self.beta * Rational::from_integer(2.into()) + self.product()
    }

    /// The `(β, α)` game, in which the roles are exchanged.
    pub fn swapped(&self) -> GameParams {
        GameParams {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

impl std::fmt::Display for GameParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(α, β) = ({}, {})",
            fmt_rational(&self.alpha),
            fmt_rational(&self.beta)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn gammas() {
        let p = GameParams::new(rat(1, 2), rat(1, 2)).unwrap();
        assert_eq!(p.gamma_a(), rat(1, 4));
        assert_eq!(p.gamma_b(), rat(1, 4));
        let p = GameParams::new(rat(9, 25), rat(2, 5)).unwrap();
        assert_eq!(p.product(), rat(18, 125));
        assert_eq!(p.gamma_a(), rat(53, 125));
        assert_eq!(p.gamma_b(), rat(43, 125));
        assert_eq!(p.swapped().gamma_a(), p.gamma_b());
    }

    #[test]
    fn rejects_boundary() {
        assert!(GameParams::new(rat(0, 1), rat(1, 2)).is_err());
        assert!(GameParams::new(rat(1, 2), rat(1, 1)).is_err());
        assert!(GameParams::new(rat(3, 2), rat(1, 2)).is_err());
    }
}
