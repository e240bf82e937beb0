//! Turn scheduling: the first index `t` at which `{t·ξ + χ}` lands in a
//! window, for irrational `ξ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::log::{rescale_to, FixedEnclosure, LogExpr};
use super::rational::{fmt_rational, Rational};
use super::{Escalation, NumericsError};

/// Outcome of testing one index against the window.
enum Decision {
    Inside,
    Outside,
    Undecided,
}

/// Window `[lo, hi)` on the unit circle, tested against dyadic enclosures.
struct Window<'a> {
    lo: &'a Rational,
    hi: &'a Rational,
}

impl Window<'_> {
    /// Is `frac(v)` in `[lo, hi)` for every `v` in `[e.lo, e.hi] / 2^scale`?
    ///
    /// The accept set is the union of `[k+lo, k+hi)`. The answer is uniform
    /// on the enclosure iff no breakpoint `k+lo` or `k+hi` lies in
    /// `(e.lo, e.hi]`.
    fn decide(&self, e: &FixedEnclosure) -> Decision {
        let unit = BigInt::one() << e.scale as usize;
        let k = e.lo.div_floor(&unit);
        let frac_num = &e.lo - &k * &unit;
        let frac = Rational::new(frac_num, unit.clone());
        let (next_bp, inside) = if frac < *self.lo {
            (Rational::from_integer(k.clone()) + self.lo, false)
        } else if frac < *self.hi {
            (Rational::from_integer(k.clone()) + self.hi, true)
        } else {
            (Rational::from_integer(k + 1) + self.lo, false)
        };
        let upper = Rational::new(e.hi.clone(), unit);
        if next_bp > upper {
            if inside {
                Decision::Inside
            } else {
                Decision::Outside
            }
        } else {
            Decision::Undecided
        }
    }
}

/// Smallest `t >= t_start` with `{t·value(xi) + value(chi)}` in `[lo, hi)`.
///
/// Requires `0 <= lo < hi <= 1` and `value(xi)` irrational (checked exactly
/// by factorization). Each index is decided with enclosures whose precision
/// starts at 64 bits and doubles on ambiguity, up to the cap; an index that
/// is still ambiguous at the cap is reported with its value of `t`.
pub fn first_window_hit(
    xi: &LogExpr,
    chi: &LogExpr,
    lo: &Rational,
    hi: &Rational,
    t_start: u64,
) -> Result<u64, NumericsError> {
    first_window_hit_with(xi, chi, lo, hi, t_start, &Escalation::default())
}

pub fn first_window_hit_with(
    xi: &LogExpr,
    chi: &LogExpr,
    lo: &Rational,
    hi: &Rational,
    t_start: u64,
    esc: &Escalation,
) -> Result<u64, NumericsError> {
    if lo.is_negative() || *hi > Rational::one() || lo >= hi {
        return Err(NumericsError::InvalidWindow(format!(
            "need 0 <= lo < hi <= 1, got [{}, {})",
            fmt_rational(lo),
            fmt_rational(hi)
        )));
    }
    if xi.exact_value().is_some() {
        return Err(NumericsError::EquidistributionViolated {
            base: xi.base(),
            argument: fmt_rational(xi.argument()),
        });
    }
    if lo.is_zero() && hi.is_one() {
        return Ok(t_start);
    }
    let window = Window { lo, hi };
    // Enclosures of xi and chi per precision level, computed on demand.
    let mut levels: Vec<(u32, FixedEnclosure, FixedEnclosure)> = Vec::new();
    let mut level_for = |bits: u32| -> (FixedEnclosure, FixedEnclosure) {
        if let Some((_, x, c)) = levels.iter().find(|(b, _, _)| *b == bits) {
            return (x.clone(), c.clone());
        }
        let x = xi.fixed_enclosure(bits);
        let c = chi.fixed_enclosure(bits);
        let scale = x.scale.max(c.scale);
        let (x, c) = (rescale_to(&x, scale), rescale_to(&c, scale));
        levels.push((bits, x.clone(), c.clone()));
        (x, c)
    };
    let mut t = t_start;
    let mut bits = esc.start_bits;
    loop {
        if t - t_start >= esc.max_steps {
            return Err(NumericsError::SearchLimit {
                steps: esc.max_steps,
            });
        }
        if t == 0 {
            // xi is irrational, so only t = 0 can have an exact value.
            if let Some(v) = chi.exact_value() {
                let f = &v - v.floor();
                if &f >= lo && &f < hi {
                    return Ok(0);
                }
                t = 1;
                continue;
            }
        }
        let (x, c) = level_for(bits);
        let value = x.scaled_by(&BigInt::from(t)).add(&c);
        match window.decide(&value) {
            Decision::Inside => return Ok(t),
            Decision::Outside => {
                t += 1;
                bits = esc.start_bits;
            }
            Decision::Undecided => {
                if bits >= esc.cap_bits {
                    return Err(NumericsError::PrecisionCap { t: Some(t), bits });
                }
                bits = (bits * 2).min(esc.cap_bits);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn log(base: u32, q: Rational) -> LogExpr {
        LogExpr::log(base, q).unwrap()
    }

    #[test]
    fn full_window_accepts_first_index() {
        let xi = log(2, rat(15, 2));
        let t = first_window_hit(&xi, &LogExpr::constant(int(0)), &int(0), &int(1), 1).unwrap();
        assert_eq!(t, 1);
        assert_eq!(
            first_window_hit(&xi, &LogExpr::constant(int(0)), &int(0), &int(1), 17).unwrap(),
            17
        );
    }

    #[test]
    fn golden_hits() {
        // Frozen from an independent 400-bit mpmath scan of frac(t·log2(2/15)).
        let xi = log(2, rat(2, 15));
        let zero = LogExpr::constant(int(0));
        assert_eq!(
            first_window_hit(&xi, &zero, &int(0), &rat(1, 10), 1).unwrap(),
            1
        );
        assert_eq!(
            first_window_hit(&xi, &zero, &int(0), &rat(1, 10), 2).unwrap(),
            11
        );
        assert_eq!(
            first_window_hit(&xi, &zero, &rat(1, 2), &rat(51, 100), 0).unwrap(),
            145
        );
    }

    #[test]
    fn rejects_bad_windows_and_rational_xi() {
        let xi = log(2, rat(2, 15));
        let zero = LogExpr::constant(int(0));
        assert!(matches!(
            first_window_hit(&xi, &zero, &rat(1, 3), &rat(1, 3), 0),
            Err(NumericsError::InvalidWindow(_))
        ));
        assert!(matches!(
            first_window_hit(&log(2, rat(1, 16)), &zero, &int(0), &rat(1, 2), 0),
            Err(NumericsError::EquidistributionViolated { .. })
        ));
    }

    #[test]
    fn boundary_coincidence_hits_the_cap() {
        // chi = -log2(2/15) makes t = 1 land exactly on the breakpoint 0.
        let xi = log(2, rat(2, 15));
        let chi = log(2, rat(2, 15)).times(-1);
        let esc = Escalation {
            start_bits: 64,
            cap_bits: 256,
            max_steps: 100,
        };
        let r = first_window_hit_with(&xi, &chi, &rat(1, 2), &int(1), 1, &esc);
        assert_eq!(
            r,
            Err(NumericsError::PrecisionCap {
                t: Some(1),
                bits: 256
            })
        );
    }

    /// Exact fractional-part membership of `t·xi + chi`, decided on an
    /// enclosure of width `2^-bits`; `None` when the enclosure straddles a
    /// breakpoint.
    fn recheck(
        xi: &LogExpr,
        chi: &LogExpr,
        t: u64,
        lo: &Rational,
        hi: &Rational,
        bits: u32,
    ) -> Option<bool> {
        let v = xi.clone().times(t as i64);
        let (a, b) = (v.enclose(bits), chi.enclose(bits));
        let (lower, upper) = (a.lower + b.lower, a.upper + b.upper);
        let fl = lower.floor();
        let (f_lo, f_hi) = (&lower - &fl, &upper - &fl);
        if f_hi >= Rational::one() {
            return None;
        }
        if &f_lo >= lo && &f_hi < hi {
            Some(true)
        } else if &f_hi < lo || &f_lo >= hi {
            Some(false)
        } else {
            None
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn hits_are_minimal_and_stable(
            base in 2u32..=5,
            p in 1i64..40,
            q in 41i64..400,
            lo_n in 0i64..90,
            width in 1i64..30,
            chi_n in 0i64..100,
        ) {
            let arg = rat(p, q);
            let xi = LogExpr::log(base, arg.clone()).unwrap();
            proptest::prop_assume!(xi.exact_value().is_none());
            let chi = LogExpr::constant(rat(chi_n, 100));
            let lo = rat(lo_n, 100);
            let hi = rat((lo_n + width).min(100), 100);
            let t = first_window_hit(&xi, &chi, &lo, &hi, 0).unwrap();
            proptest::prop_assert_eq!(recheck(&xi, &chi, t, &lo, &hi, 256), Some(true));
            for s in 0..t {
                proptest::prop_assert_eq!(recheck(&xi, &chi, s, &lo, &hi, 256), Some(false));
            }
        }
    }
}
