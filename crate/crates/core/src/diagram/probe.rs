//! Finite-horizon rollouts attached to cells where a theorem fires.

use serde::Serialize;

use super::{Verdict, ZoneVerdict};
use crate::analysis::{ba_invariant_check, j_n_hit, TargetSet};
use crate::game::{play_logged, GameParams, Strategy, StrategyEvent};
use crate::numerics::Rational;
use crate::strategies::{BaTargeter, BbaTargeter, Random, ThreeBa};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    pub rounds: usize,
    /// Seeds `0..games`, alternating uniform and extreme random opponents.
    pub games: u64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            rounds: 200,
            games: 4,
        }
    }
}

/// The outcome of one strategy's rollouts at a cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeSummary {
    pub rule_id: &'static str,
    pub strategy: String,
    pub games: u64,
    pub rounds: usize,
    pub passed: bool,
    pub certificate: String,
}

fn opponent(seed: u64) -> Random {
    Random {
        extreme: seed % 2 == 1,
    }
}

/// Runs the strategy behind each fired theorem that has one.
pub fn run_probes(zv: &ZoneVerdict, target: &TargetSet, cfg: &ProbeConfig) -> Vec<ProbeSummary> {
    let Ok(params) = GameParams::new(zv.alpha.clone(), zv.beta.clone()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let fired = |rule: &str, v: Verdict| zv.verdict_of(rule) == Some(v);
    match target {
        TargetSet::Bba { base, c } | TargetSet::BbaTail { base, c, .. }
            if fired("bbalos", Verdict::Losing) =>
        {
            out.push(bba_probe(&params, *base, c, cfg));
        }
        TargetSet::Ba { c } if fired("bbalos", Verdict::Losing) => {
            out.push(bba_probe(&params, 2, c, cfg))
        }
        _ => {}
    }
    match target {
        TargetSet::Bba { c, .. } | TargetSet::BbaTail { c, .. } | TargetSet::Ba { c }
            if fired("2bawin", Verdict::Winning) =>
        {
            out.push(ba_probe(&params, c, cfg));
        }
        TargetSet::ThreeBaSixth if fired("3balos", Verdict::Losing) => {
            out.push(three_ba_probe(&params, cfg))
        }
        _ => {}
    }
    out
}

fn failed(rule_id: &'static str, strategy: String, cfg: &ProbeConfig, why: String) -> ProbeSummary {
    ProbeSummary {
        rule_id,
        strategy,
        games: cfg.games,
        rounds: cfg.rounds,
        passed: false,
        certificate: why,
    }
}

/// Bob's targeter must log at least one hit per game, each rechecked.
fn bba_probe(params: &GameParams, base: u32, c: &Rational, cfg: &ProbeConfig) -> ProbeSummary {
    let s = match BbaTargeter::new(base, c.clone(), params.clone()) {
        Ok(s) => s,
        Err(e) => return failed("bbalos", format!("bba-targeter:{base}"), cfg, e.to_string()),
    };
    let mut total = 0usize;
    for seed in 0..cfg.games {
        let rec = match play_logged(params, &s, &opponent(seed), cfg.rounds, None, seed) {
            Ok(r) => r,
            Err(e) => return failed("bbalos", s.name(), cfg, format!("seed {seed}: {e}")),
        };
        let mut hits = 0;
        for ev in &rec.events {
            if let StrategyEvent::JnHit { round, n, .. } = &ev.event {
                let bob = rec.transcript.bob(*round).expect("logged round exists");
                if j_n_hit(bob, base, *n, c).is_none() {
                    return failed(
                        "bbalos",
                        s.name(),
                        cfg,
                        format!("seed {seed}: hit at round {round} fails recheck"),
                    );
                }
                hits += 1;
            }
        }
        if hits == 0 {
            return failed(
                "bbalos",
                s.name(),
                cfg,
                format!("seed {seed}: no hit in {} rounds", cfg.rounds),
            );
        }
        total += hits;
    }
    ProbeSummary {
        rule_id: "bbalos",
        strategy: s.name(),
        games: cfg.games,
        rounds: cfg.rounds,
        passed: true,
        certificate: format!("{total} certified hits"),
    }
}

/// Alice's third-point invariant must hold in every round of every game.
fn ba_probe(params: &GameParams, c: &Rational, cfg: &ProbeConfig) -> ProbeSummary {
    let s = match BaTargeter::new(c.clone(), params.clone()) {
        Ok(s) => s,
        Err(e) => return failed("2bawin", "ba-targeter".into(), cfg, e.to_string()),
    };
    for seed in 0..cfg.games {
        let rec = match play_logged(params, &opponent(seed), &s, cfg.rounds, None, seed) {
            Ok(r) => r,
            Err(e) => return failed("2bawin", s.name(), cfg, format!("seed {seed}: {e}")),
        };
        let report = ba_invariant_check(&rec.transcript, c);
        if !report.passed() {
            return failed(
                "2bawin",
                s.name(),
                cfg,
                format!("seed {seed}: {} violations", report.violations.len()),
            );
        }
    }
    ProbeSummary {
        rule_id: "2bawin",
        strategy: s.name(),
        games: cfg.games,
        rounds: cfg.rounds,
        passed: true,
        certificate: "invariant held in every round".into(),
    }
}

/// Bob's ternary targeter must log at least one visit per game.
fn three_ba_probe(params: &GameParams, cfg: &ProbeConfig) -> ProbeSummary {
    let s = match ThreeBa::new(params.clone()) {
        Ok(s) => s,
        Err(e) => return failed("3balos", "3ba".into(), cfg, e.to_string()),
    };
    let mut total = 0usize;
    for seed in 0..cfg.games {
        let rec = match play_logged(params, &s, &opponent(seed), cfg.rounds, None, seed) {
            Ok(r) => r,
            Err(e) => return failed("3balos", s.name(), cfg, format!("seed {seed}: {e}")),
        };
        let visits = rec
            .events
            .iter()
            .filter(|e| matches!(e.event, StrategyEvent::ThreeBaVisit { .. }))
            .count();
        if visits == 0 {
            return failed(
                "3balos",
                s.name(),
                cfg,
                format!("seed {seed}: no visit in {} rounds", cfg.rounds),
            );
        }
        total += visits;
    }
    ProbeSummary {
        rule_id: "3balos",
        strategy: s.name(),
        games: cfg.games,
        rounds: cfg.rounds,
        passed: true,
        certificate: format!("{total} certified visits"),
    }
}
