//! Schmidt diagrams: classify grid points of the open unit square by every
//! closed-form winning or losing condition known for a target set.
//!
//! THEOREM and TRIVIAL verdicts are ground truth and must never disagree at
//! a point. CONJECTURE verdicts are reported and rendered but never trusted.

mod probe;
mod render;
mod rules;

use rayon::prelude::*;
use serde::Serialize;

pub use probe::{run_probes, ProbeConfig, ProbeSummary};
pub use render::{render, to_csv, to_svg, Format, CSV_HEADER};
pub use rules::{in_trivial_losing_zone, in_trivial_winning_zone, is_dense, kind_of, rule_ids};

use crate::analysis::TargetSet;
use crate::game::GameParams;
use crate::numerics::rational::{fmt_rational, serde_rational};
use crate::numerics::{rat, Escalation, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Winning,
    Losing,
    Inapplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RuleKind {
    Theorem,
    Conjecture,
    Trivial,
}

impl RuleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleKind::Theorem => "THEOREM",
            RuleKind::Conjecture => "CONJECTURE",
            RuleKind::Trivial => "TRIVIAL",
        }
    }

    /// Whether verdicts of this kind are established facts.
    pub fn is_ground_truth(self) -> bool {
        self != RuleKind::Conjecture
    }
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Winning => "Winning",
            Verdict::Losing => "Losing",
            Verdict::Inapplicable => "Inapplicable",
        }
    }
}

/// One rule's verdict at one point. `note` says why a rule did not fire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub rule_id: &'static str,
    pub verdict: Verdict,
    pub kind: RuleKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// How a cell is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Shade {
    Winning,
    Losing,
    ConjectureWinning,
    ConjectureLosing,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZoneVerdict {
    #[serde(with = "serde_rational")]
    pub alpha: Rational,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
    pub classifications: Vec<Classification>,
    pub empirical: Vec<ProbeSummary>,
}

impl ZoneVerdict {
    fn established(&self, v: Verdict) -> Option<&Classification> {
        self.classifications
            .iter()
            .find(|c| c.verdict == v && c.kind.is_ground_truth())
    }

    fn conjectured(&self, v: Verdict) -> bool {
        self.classifications
            .iter()
            .any(|c| c.verdict == v && c.kind == RuleKind::Conjecture)
    }

    /// A ground-truth Winning and Losing pair, if any.
    pub fn contradiction(&self) -> Option<(&'static str, &'static str)> {
        Some((
            self.established(Verdict::Winning)?.rule_id,
            self.established(Verdict::Losing)?.rule_id,
        ))
    }

    pub fn shade(&self) -> Shade {
        if self.established(Verdict::Winning).is_some() {
            Shade::Winning
        } else if self.established(Verdict::Losing).is_some() {
            Shade::Losing
        } else if self.conjectured(Verdict::Winning) {
            Shade::ConjectureWinning
        } else if self.conjectured(Verdict::Losing) {
            Shade::ConjectureLosing
        } else {
            Shade::Unknown
        }
    }

    pub fn verdict_of(&self, rule_id: &str) -> Option<Verdict> {
        self.classifications
            .iter()
            .find(|c| c.rule_id == rule_id)
            .map(|c| c.verdict)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("({alpha}, {beta}) is outside the open unit square")]
    OutOfSquare { alpha: String, beta: String },
    #[error("invalid target: {0}")]
    Target(String),
    #[error("grid size must be at least 1")]
    EmptyGrid,
    #[error(
        "contradictory verdicts at ({alpha}, {beta}): {winning} says Winning, {losing} says Losing"
    )]
    Contradiction {
        alpha: String,
        beta: String,
        winning: &'static str,
        losing: &'static str,
    },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Every rule for `target` at `(alpha, beta)`, using the precision cap from
/// the environment.
pub fn classify_point(
    alpha: Rational,
    beta: Rational,
    target: &TargetSet,
) -> Result<ZoneVerdict, DiagramError> {
    let esc = Escalation::from_env().unwrap_or_default();
    classify_point_with(alpha, beta, target, &esc)
}

/// [`classify_point`] with explicit precision settings.
pub fn classify_point_with(
    alpha: Rational,
    beta: Rational,
    target: &TargetSet,
    esc: &Escalation,
) -> Result<ZoneVerdict, DiagramError> {
    target
        .validate()
        .map_err(|e| DiagramError::Target(e.to_string()))?;
    let out_of_square = || DiagramError::OutOfSquare {
        alpha: fmt_rational(&alpha),
        beta: fmt_rational(&beta),
    };
    let params = GameParams::new(alpha.clone(), beta.clone()).map_err(|_| out_of_square())?;
    let zv = ZoneVerdict {
        classifications: rules::evaluate(&params, target, esc),
        alpha,
        beta,
        empirical: Vec::new(),
    };
    if let Some((winning, losing)) = zv.contradiction() {
        return Err(DiagramError::Contradiction {
            alpha: fmt_rational(&zv.alpha),
            beta: fmt_rational(&zv.beta),
            winning,
            losing,
        });
    }
    Ok(zv)
}

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub probes: Option<ProbeConfig>,
    /// Worker count; `None` uses the global pool.
    pub threads: Option<usize>,
    pub escalation: Escalation,
}

/// Cells in α-major order: `cells[(i−1)·n + (j−1)]` is `(i/(n+1), j/(n+1))`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub target: TargetSet,
    pub grid_n: usize,
    pub cells: Vec<ZoneVerdict>,
}

impl Grid {
    pub fn cell(&self, i: usize, j: usize) -> &ZoneVerdict {
        &self.cells[(i - 1) * self.grid_n + (j - 1)]
    }
}

/// The `grid_n × grid_n` diagram at points `(i/(n+1), j/(n+1))`.
pub fn sweep(target: &TargetSet, grid_n: usize, opts: &SweepOptions) -> Result<Grid, DiagramError> {
    if grid_n == 0 {
        return Err(DiagramError::EmptyGrid);
    }
    target
        .validate()
        .map_err(|e| DiagramError::Target(e.to_string()))?;
    let denom = grid_n as i64 + 1;
    let run = || -> Result<Vec<ZoneVerdict>, DiagramError> {
        (0..grid_n * grid_n)
            .into_par_iter()
            .map(|k| {
                let (i, j) = ((k / grid_n) as i64 + 1, (k % grid_n) as i64 + 1);
                let mut zv =
                    classify_point_with(rat(i, denom), rat(j, denom), target, &opts.escalation)?;
                if let Some(cfg) = &opts.probes {
                    zv.empirical = run_probes(&zv, target, cfg);
                }
                Ok(zv)
            })
            .collect()
    };
    let cells = match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| DiagramError::Pool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(Grid {
        target: target.clone(),
        grid_n,
        cells,
    })
}
