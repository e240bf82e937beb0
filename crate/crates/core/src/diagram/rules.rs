//! Closed-form winning and losing conditions, evaluated exactly or with
//! rigorous enclosures.

use std::cmp::Ordering;

use num_traits::{ToPrimitive, Zero};

use super::{Classification, RuleKind, Verdict};
use crate::analysis::TargetSet;
use crate::game::GameParams;
use crate::numerics::rational::fmt_rational;
use crate::numerics::{is_log_rational, log_sum_sign, rat, Escalation, NumericsError, Rational};

/// Rule ids in evaluation order, per target family.
pub fn rule_ids(target: &TargetSet) -> Vec<&'static str> {
    let mut ids = vec!["trivial-a", "trivial-b"];
    match target {
        TargetSet::ReferenceS => ids.push("thm-nontrivial-s"),
        TargetSet::Generic => {}
        TargetSet::DPlus { .. } => {
            ids.extend(["ffns-win", "ffns-lose", "df-win", "df-lose", "freak-b"])
        }
        TargetSet::DMinus { .. } => {
            ids.extend(["ffns-lose", "df-win", "df-lose", "freak-a", "conj-dminus"])
        }
        TargetSet::Bba { .. } | TargetSet::BbaTail { .. } | TargetSet::Ba { .. } => {
            ids.extend(["bbalos", "2bawin"])
        }
        TargetSet::ThreeBaSixth => ids.extend(["3balos", "conj-3ba"]),
    }
    ids
}

/// Whether the target is dense in ℝ.
pub fn is_dense(target: &TargetSet) -> bool {
    match target {
        TargetSet::DPlus { c } | TargetSet::DMinus { c } => c < &rat(1, 1),
        TargetSet::ReferenceS | TargetSet::Generic => true,
        // Each excludes open neighborhoods of a grid.
        TargetSet::Bba { .. }
        | TargetSet::BbaTail { .. }
        | TargetSet::Ba { .. }
        | TargetSet::ThreeBaSixth => false,
    }
}

/// `β ≥ 1/(2−α)`.
pub fn in_trivial_winning_zone(p: &GameParams) -> bool {
    p.beta() * (rat(2, 1) - p.alpha()) >= rat(1, 1)
}

/// `β ≤ 2 − 1/α`, the complement of the zone where proper subsets can win.
pub fn in_trivial_losing_zone(p: &GameParams) -> bool {
    p.alpha() * (rat(2, 1) - p.beta()) >= rat(1, 1)
}

struct Ctx<'a> {
    p: &'a GameParams,
    target: &'a TargetSet,
    esc: &'a Escalation,
}

fn fires(rule: &'static str, kind: RuleKind, verdict: Verdict) -> Classification {
    Classification {
        rule_id: rule,
        verdict,
        kind,
        note: None,
    }
}

fn inapplicable(rule: &'static str, kind: RuleKind, note: impl Into<String>) -> Classification {
    Classification {
        rule_id: rule,
        verdict: Verdict::Inapplicable,
        kind,
        note: Some(note.into()),
    }
}

/// `c` as `p/q` with machine-size parts.
fn small_ratio(c: &Rational) -> Result<(i64, i64), String> {
    match (c.numer().to_i64(), c.denom().to_i64()) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(format!(
            "constant {} is too large for log comparisons",
            fmt_rational(c)
        )),
    }
}

impl Ctx<'_> {
    /// Sign of `log(x)/log(αβ) − c`.
    fn log_ratio_vs(&self, x: &Rational, c: &Rational) -> Result<Ordering, String> {
        let (p, q) = small_ratio(c)?;
        // log(αβ) < 0, so log x / log(αβ) − c has the sign of −(q·log x − p·log(αβ)).
        let s =
            log_sum_sign(2, &[(q, x.clone()), (-p, self.p.product())], self.esc).map_err(diag)?;
        Ok(s.reverse())
    }

    fn log_irrational(&self, base: u32) -> Result<bool, String> {
        Ok(is_log_rational(base, &self.p.product())
            .map_err(diag)?
            .is_none())
    }

    fn eval(&self, rule: &'static str) -> Classification {
        let (a, b, ab) = (self.p.alpha(), self.p.beta(), self.p.product());
        use RuleKind::*;
        use Verdict::*;
        let result: Result<Classification, String> = (|| match rule {
            "trivial-a" => Ok(if !is_dense(self.target) {
                inapplicable(rule, Trivial, "target is not dense")
            } else if in_trivial_winning_zone(self.p) {
                fires(rule, Trivial, Winning)
            } else {
                inapplicable(rule, Trivial, "outside zone")
            }),
            "trivial-b" => Ok(if in_trivial_losing_zone(self.p) {
                fires(rule, Trivial, Losing)
            } else {
                inapplicable(rule, Trivial, "outside zone")
            }),
            "thm-nontrivial-s" => Ok(fires(rule, Theorem, if b > a { Winning } else { Losing })),
            "ffns-win" => {
                let c = self.c();
                Ok(
                    if self.log_ratio_vs(&(rat(8, 1) * a), c)? == Ordering::Greater {
                        fires(rule, Theorem, Winning)
                    } else {
                        inapplicable(rule, Theorem, "outside zone")
                    },
                )
            }
            "ffns-lose" => {
                let c = self.c();
                Ok(
                    if self.log_ratio_vs(&(a / rat(8, 1)), c)? != Ordering::Greater {
                        fires(rule, Theorem, Losing)
                    } else {
                        inapplicable(rule, Theorem, "outside zone")
                    },
                )
            }
            "df-win" | "df-lose" => {
                let win = rule == "df-win";
                let gate = if win {
                    a <= &rat(1, 4)
                } else {
                    b <= &rat(1, 4)
                };
                if !gate {
                    return Ok(inapplicable(rule, Theorem, "outside zone"));
                }
                if !self.log_irrational(2)? {
                    return Ok(inapplicable(rule, Theorem, "log2(alpha*beta) is rational"));
                }
                let c = self.c();
                Ok(if win {
                    if self.log_ratio_vs(&(rat(4, 1) * a), c)? == Ordering::Greater {
                        fires(rule, Theorem, Winning)
                    } else {
                        inapplicable(rule, Theorem, "outside zone")
                    }
                } else if self.log_ratio_vs(&(a / rat(4, 1)), c)? != Ordering::Greater {
                    fires(rule, Theorem, Losing)
                } else {
                    inapplicable(rule, Theorem, "outside zone")
                })
            }
            "freak-a" => Ok(if self.c() < &rat(1, 2) {
                inapplicable(rule, Theorem, "needs c >= 1/2")
            } else if a >= b {
                fires(rule, Theorem, Losing)
            } else {
                inapplicable(rule, Theorem, "outside zone")
            }),
            "freak-b" => Ok(if self.c() >= &rat(1, 2) {
                inapplicable(rule, Theorem, "needs c < 1/2")
            } else if b <= a {
                inapplicable(rule, Theorem, "outside zone")
            } else if !self.log_irrational(2)? {
                inapplicable(rule, Theorem, "log2(alpha*beta) is rational")
            } else {
                fires(rule, Theorem, Winning)
            }),
            "conj-dminus" => {
                let above = self.log_ratio_vs(a, self.c())? == Ordering::Greater;
                Ok(fires(
                    rule,
                    Conjecture,
                    if above { Winning } else { Losing },
                ))
            }
            "bbalos" => {
                let (base, c) = self.approx_params();
                let g = self.p.gamma_a();
                if g <= Rational::zero() {
                    return Ok(inapplicable(rule, Theorem, "gamma_A <= 0"));
                }
                let one = rat(1, 1);
                let v = rat(2, 1) * &c * (&one - b) * (&one - &ab) / (b * g);
                if v <= one {
                    return Ok(inapplicable(rule, Theorem, "outside zone"));
                }
                if !self.log_irrational(base)? {
                    return Ok(inapplicable(
                        rule,
                        Theorem,
                        format!("log{base}(alpha*beta) is rational"),
                    ));
                }
                Ok(fires(rule, Theorem, Losing))
            }
            "2bawin" => {
                let (base, c) = self.approx_params();
                if base != 2 {
                    return Ok(inapplicable(rule, Theorem, "needs base 2"));
                }
                let ok = c < rat(1, 6)
                    && a < &rat(1, 3)
                    && b > &(rat(9, 1) * &c / (rat(1, 1) - rat(3, 1) * a));
                Ok(if ok {
                    fires(rule, Theorem, Winning)
                } else {
                    inapplicable(rule, Theorem, "outside zone")
                })
            }
            "3balos" => {
                let (ga, gb) = (self.p.gamma_a(), self.p.gamma_b());
                let one = rat(1, 1);
                let ok = b * &ga < gb
                    && (&one - &ab) / (a * &gb) >= rat(9, 1) * b / (&one - b)
                    && ab > rat(1, 7);
                if !ok {
                    return Ok(inapplicable(rule, Theorem, "outside zone"));
                }
                if !self.log_irrational(3)? {
                    return Ok(inapplicable(rule, Theorem, "log3(alpha*beta) is rational"));
                }
                Ok(fires(rule, Theorem, Losing))
            }
            "conj-3ba" => {
                let win = b * self.p.gamma_a() >= self.p.gamma_b();
                Ok(fires(rule, Conjecture, if win { Winning } else { Losing }))
            }
            other => Err(format!("unknown rule {other}")),
        })();
        result.unwrap_or_else(|note| inapplicable(rule, kind_of(rule), note))
    }

    fn c(&self) -> &Rational {
        match self.target {
            TargetSet::DPlus { c } | TargetSet::DMinus { c } => c,
            _ => unreachable!("frequency rule on a non-frequency target"),
        }
    }

    fn approx_params(&self) -> (u32, Rational) {
        match self.target {
            TargetSet::Bba { base, c } | TargetSet::BbaTail { base, c, .. } => (*base, c.clone()),
            TargetSet::Ba { c } => (2, c.clone()),
            _ => unreachable!("approximation rule on a non-approximation target"),
        }
    }
}

fn diag(e: NumericsError) -> String {
    format!("undecided: {e}")
}

/// Kind of each rule id.
pub fn kind_of(rule: &str) -> RuleKind {
    match rule {
        "trivial-a" | "trivial-b" => RuleKind::Trivial,
        "conj-dminus" | "conj-3ba" => RuleKind::Conjecture,
        _ => RuleKind::Theorem,
    }
}

/// Every rule for `target` at `p`.
pub fn evaluate(p: &GameParams, target: &TargetSet, esc: &Escalation) -> Vec<Classification> {
    let ctx = Ctx { p, target, esc };
    rule_ids(target).into_iter().map(|r| ctx.eval(r)).collect()
}
