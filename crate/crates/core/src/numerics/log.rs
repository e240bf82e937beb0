//! Exact integer logarithms and rigorous enclosures of `m·log_b(q) + r`.
//!
//! Logarithms of rationals are never stored as floats. They live as
//! [`LogExpr`] values and are compared through dyadic enclosures whose
//! endpoints are computed with directed rounding in fixed point.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{ceil_int, floor_int, fmt_rational, parse_rational, pow_int, rat, Rational};
use super::{Escalation, NumericsError};

fn check_base(base: u32) -> Result<(), NumericsError> {
    if base < 2 {
        return Err(NumericsError::Domain(format!(
            "logarithm base must be >= 2, got {base}"
        )));
    }
    Ok(())
}

fn check_positive(q: &Rational) -> Result<(), NumericsError> {
    if !q.is_positive() {
        return Err(NumericsError::Domain(format!(
            "logarithm argument must be positive, got {}",
            fmt_rational(q)
        )));
    }
    Ok(())
}

/// `base^exp <= q`, decided with integer arithmetic only.
fn pow_le(base: &BigInt, exp: i64, q: &Rational) -> bool {
    let p = base.pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        &p * q.denom() <= *q.numer()
    } else {
        *q.denom() <= q.numer() * &p
    }
}

/// The unique `n` with `base^n <= q < base^(n+1)`.
pub fn floor_log(base: u32, q: &Rational) -> Result<i64, NumericsError> {
    check_base(base)?;
    check_positive(q)?;
    let b = BigInt::from(base);
    // Bit lengths give an estimate within a couple of units; exact
    // comparisons settle the rest.
    let approx_log2 = q.numer().bits() as f64 - q.denom().bits() as f64;
    let mut n = (approx_log2 / (base as f64).log2()).floor() as i64;
    while !pow_le(&b, n, q) {
        n -= 1;
    }
    while pow_le(&b, n + 1, q) {
        n += 1;
    }
    Ok(n)
}

/// Smallest `n` with `q <= base^n`.
pub fn ceil_log(base: u32, q: &Rational) -> Result<i64, NumericsError> {
    let n = floor_log(base, q)?;
    if pow_int(base, n) == *q {
        Ok(n)
    } else {
        Ok(n + 1)
    }
}

fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn strip_prime(value: &mut BigInt, p: u64) -> i64 {
    if p == 2 {
        let tz = value.trailing_zeros().unwrap_or(0);
        *value >>= tz as usize;
        return tz as i64;
    }
    let p = BigInt::from(p);
    let mut count = 0;
    loop {
        let (quot, rem) = value.div_rem(&p);
        if !rem.is_zero() {
            return count;
        }
        *value = quot;
        count += 1;
    }
}

/// Returns `Some(p/s)` when `q = base^(p/s)` exactly, `None` when
/// `log_base(q)` is irrational.
///
/// `q` is a rational power of `base` iff the exponent vector of `q` over the
/// primes is a rational multiple of the exponent vector of `base`.
pub fn is_log_rational(base: u32, q: &Rational) -> Result<Option<Rational>, NumericsError> {
    check_base(base)?;
    check_positive(q)?;
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    let mut ratio: Option<Rational> = None;
    for (p, e) in factor_small(base as u64) {
        let f = strip_prime(&mut num, p) - strip_prime(&mut den, p);
        let r = rat(f, e as i64);
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) => return Ok(None),
        }
    }
    if num.is_one() && den.is_one() {
        Ok(Some(ratio.unwrap_or_else(Rational::zero)))
    } else {
        Ok(None)
    }
}

/// Working precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MIN_BITS: u32 = 8;

    pub fn new(bits: u32) -> Result<Self, NumericsError> {
        if bits < Self::MIN_BITS {
            return Err(NumericsError::Domain(format!(
                "precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(Precision { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }
}

/// Closed enclosure `[lower, upper]` of a real number. May be degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lower: Rational,
    pub upper: Rational,
}

impl Enclosure {
    pub fn exact(value: Rational) -> Self {
        Enclosure {
            lower: value.clone(),
            upper: value,
        }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lower <= *x && *x <= self.upper
    }

    pub fn is_within(&self, outer: &Enclosure) -> bool {
        outer.lower <= self.lower && self.upper <= outer.upper
    }
}

/// Dyadic enclosure `[lo, hi] / 2^scale`, the internal currency of the
/// scheduler and comparison routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FixedEnclosure {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl FixedEnclosure {
    pub fn from_rational(q: &Rational, scale: u32) -> Self {
        let scaled = q * Rational::from_integer(BigInt::one() << scale as usize);
        FixedEnclosure {
            lo: floor_int(&scaled),
            hi: ceil_int(&scaled),
            scale,
        }
    }

    pub fn to_enclosure(&self) -> Enclosure {
        let d = BigInt::one() << self.scale as usize;
        Enclosure {
            lower: Rational::new(self.lo.clone(), d.clone()),
            upper: Rational::new(self.hi.clone(), d),
        }
    }

    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn scaled_by(&self, m: &BigInt) -> Self {
        let (a, b) = (&self.lo * m, &self.hi * m);
        let (lo, hi) = if m.is_negative() { (b, a) } else { (a, b) };
        FixedEnclosure {
            lo,
            hi,
            scale: self.scale,
        }
    }

    pub fn add(&self, other: &FixedEnclosure) -> Self {
        debug_assert_eq!(self.scale, other.scale);
        FixedEnclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            scale: self.scale,
        }
    }
}

/// Enclosure of the fractional part `log_base(x)` for `x` in `[1, base)`,
/// `x = num/den`, as integers over `2^steps`: the result `(lo, hi)` satisfies
/// `lo/2^steps <= log_base(x) <= hi/2^steps`.
///
/// Two squaring sequences run side by side: one rounded down (its digits
/// bound the logarithm from below) and one rounded up (from above).
fn log_unit_bounds(
    base: u32,
    num: &BigInt,
    den: &BigInt,
    steps: u32,
    guard: u32,
) -> (BigInt, BigInt) {
    let p = (steps + guard) as usize;
    let b = BigInt::from(base);
    let limit = &b << p;
    let limit_sq = &b << (2 * p);
    let shifted = num << p;
    let (mut xl, rem) = shifted.div_rem(den);
    let mut xu = if rem.is_zero() { xl.clone() } else { &xl + 1 };
    let mut lower = BigInt::zero();
    let mut upper = BigInt::zero();
    let mut upper_final: Option<BigInt> = if xu >= limit {
        Some(BigInt::one() << steps as usize)
    } else {
        None
    };
    for i in 1..=steps {
        let sq = &xl * &xl;
        lower <<= 1;
        if sq >= limit_sq {
            lower += 1;
            xl = sq / &limit;
        } else {
            xl = sq >> p;
        }
        if upper_final.is_none() {
            let sq = &xu * &xu;
            upper <<= 1;
            let (q, r) = if sq >= limit_sq {
                upper += 1;
                sq.div_rem(&limit)
            } else {
                let q = &sq >> p;
                let r = sq - (&q << p);
                (q, r)
            };
            xu = if r.is_zero() { q } else { q + 1 };
            if xu >= limit {
                // The true remainder is < 1; nothing better is known from here.
                upper_final = Some((&upper + 1) << (steps - i) as usize);
            }
        }
    }
    let hi = upper_final.unwrap_or(upper + 1);
    (lower, hi)
}

/// Enclosure of `log_base(q)` with width at most `2^-bits`.
pub(crate) fn log_fixed(
    base: u32,
    q: &Rational,
    bits: u32,
) -> Result<FixedEnclosure, NumericsError> {
    let n = floor_log(base, q)?;
    let power = BigInt::from(base).pow(n.unsigned_abs() as u32);
    let (num, den) = if n >= 0 {
        (q.numer().clone(), q.denom() * &power)
    } else {
        (q.numer() * &power, q.denom().clone())
    };
    let steps = bits + 3;
    let mut guard = 6;
    loop {
        let (lo, hi) = log_unit_bounds(base, &num, &den, steps, guard);
        if &hi - &lo <= BigInt::from(8) {
            let int_part = BigInt::from(n) << steps as usize;
            return Ok(FixedEnclosure {
                lo: &int_part + lo,
                hi: int_part + hi,
                scale: steps,
            });
        }
        guard += 16;
        if guard > bits + 64 {
            // Only reachable when the unit-interval value has a short exact
            // binary expansion, which callers rule out via `is_log_rational`.
            let int_part = BigInt::from(n) << steps as usize;
            return Ok(FixedEnclosure {
                lo: &int_part + lo,
                hi: int_part + hi,
                scale: steps,
            });
        }
    }
}

/// The real number `multiplier · log_base(argument) + offset`, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogExpr {
    base: u32,
    argument: Rational,
    offset: Rational,
    multiplier: i64,
}

impl LogExpr {
    /// `log_base(argument)`.
    pub fn log(base: u32, argument: Rational) -> Result<Self, NumericsError> {
        check_base(base)?;
        check_positive(&argument)?;
        Ok(LogExpr {
            base,
            argument,
            offset: Rational::zero(),
            multiplier: 1,
        })
    }

    /// A purely rational value.
    pub fn constant(value: Rational) -> Self {
        LogExpr {
            base: 2,
            argument: Rational::one(),
            offset: value,
            multiplier: 0,
        }
    }

    pub fn times(mut self, multiplier: i64) -> Self {
        self.offset *= Rational::from_integer(multiplier.into());
        self.multiplier *= multiplier;
        self
    }

    pub fn plus(mut self, offset: Rational) -> Self {
        self.offset += offset;
        self
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    /// The exact value when it is rational.
    pub fn exact_value(&self) -> Option<Rational> {
        if self.multiplier == 0 {
            return Some(self.offset.clone());
        }
        is_log_rational(self.base, &self.argument)
            .expect("validated at construction")
            .map(|r| r * Rational::from_integer(self.multiplier.into()) + &self.offset)
    }

    /// Dyadic enclosure of width at most `2^-bits`, rounded outward.
    pub(crate) fn fixed_enclosure(&self, bits: u32) -> FixedEnclosure {
        if let Some(v) = self.exact_value() {
            return FixedEnclosure::from_rational(&v, bits + 1);
        }
        let m = BigInt::from(self.multiplier);
        let extra = 64 - self.multiplier.unsigned_abs().leading_zeros();
        let inner = log_fixed(self.base, &self.argument, bits + extra + 2)
            .expect("validated at construction");
        let scaled = inner.scaled_by(&m);
        let off = FixedEnclosure::from_rational(&self.offset, inner.scale);
        scaled.add(&off)
    }

    /// Raw enclosure at the given precision (exact when the value is rational).
    pub fn enclose(&self, bits: u32) -> Enclosure {
        match self.exact_value() {
            Some(v) => Enclosure::exact(v),
            None => self.fixed_enclosure(bits).to_enclosure(),
        }
    }
}

impl fmt::Display for LogExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplier == 0 {
            return write!(f, "{}", fmt_rational(&self.offset));
        }
        if self.multiplier != 1 {
            write!(f, "{}*", self.multiplier)?;
        }
        write!(f, "log{}({})", self.base, fmt_rational(&self.argument))?;
        if !self.offset.is_zero() {
            write!(f, "+{}", fmt_rational(&self.offset))?;
        }
        Ok(())
    }
}

/// Accepts `"[k*]log<b>(<p/q>)[+<p/q>]"` or a bare rational `"<p/q>"`.
impl FromStr for LogExpr {
    type Err = NumericsError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || NumericsError::Parse(format!("cannot parse log expression {text:?}"));
        let Some(log_at) = s.find("log") else {
            return Ok(LogExpr::constant(parse_rational(&s)?));
        };
        let multiplier = match &s[..log_at] {
            "" => 1,
            "-" => -1,
            prefix => prefix
                .strip_suffix('*')
                .ok_or_else(bad)?
                .parse::<i64>()
                .map_err(|_| bad())?,
        };
        let rest = &s[log_at + 3..];
        let open = rest.find('(').ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let base: u32 = rest[..open].parse().map_err(|_| bad())?;
        let argument = parse_rational(&rest[open + 1..close])?;
        let tail = &rest[close + 1..];
        let offset = if tail.is_empty() {
            Rational::zero()
        } else if let Some(t) = tail.strip_prefix('+') {
            parse_rational(t)?
        } else if tail.starts_with('-') {
            parse_rational(tail)?
        } else {
            return Err(bad());
        };
        Ok(LogExpr::log(base, argument)?.times(multiplier).plus(offset))
    }
}

/// Canonical enclosure of `expr` with width at most `2^-bits`.
///
/// Rational values come back exact. Irrational values come back as the
/// closed dyadic cell `[k, k+1]·2^-bits` that contains them, so results at
/// increasing precision are nested. If the value sits so close to a cell
/// boundary that the cap is reached first, the raw enclosure at the cap is
/// returned instead (still rigorous and at least as narrow).
pub fn eval_log(expr: &LogExpr, prec: Precision) -> Enclosure {
    eval_log_with(expr, prec, &Escalation::default())
}

pub fn eval_log_with(expr: &LogExpr, prec: Precision, esc: &Escalation) -> Enclosure {
    if let Some(v) = expr.exact_value() {
        return Enclosure::exact(v);
    }
    let bits = prec.bits();
    let mut work = (bits + 8).max(esc.start_bits);
    loop {
        let raw = expr.fixed_enclosure(work);
        let shift = (raw.scale - bits) as usize;
        let cell = raw.lo.div_floor(&(BigInt::one() << shift));
        let cell_lo = &cell << shift;
        let cell_hi = (&cell + 1) << shift;
        if raw.lo > cell_lo && raw.hi < cell_hi {
            let d = BigInt::one() << bits as usize;
            return Enclosure {
                lower: Rational::new(cell.clone(), d.clone()),
                upper: Rational::new(cell + 1, d),
            };
        }
        if work >= esc.cap_bits {
            return raw.to_enclosure();
        }
        work = (work * 2).min(esc.cap_bits);
    }
}

/// Sign of `Σ mᵢ·log_base(aᵢ)`.
///
/// Enclosures are tried first at escalating precision; when they cannot
/// separate the value from zero and the product `Π aᵢ^mᵢ` is small enough
/// to form exactly, the sign is read off the exact product. Exact equality
/// with zero is only ever reported from the exact route.
pub fn log_sum_sign(
    base: u32,
    terms: &[(i64, Rational)],
    esc: &Escalation,
) -> Result<Ordering, NumericsError> {
    check_base(base)?;
    for (_, a) in terms {
        check_positive(a)?;
    }
    let exact_cost: u64 = terms
        .iter()
        .map(|(m, a)| {
            m.unsigned_abs()
                .saturating_mul(a.numer().bits() + a.denom().bits())
        })
        .fold(0, u64::saturating_add);
    let mut bits = esc.start_bits;
    loop {
        let parts: Vec<FixedEnclosure> = terms
            .iter()
            .map(|(m, a)| {
                LogExpr::log(base, a.clone()).map(|e| e.times(*m).fixed_enclosure(bits + 8))
            })
            .collect::<Result<_, _>>()?;
        let Some(scale) = parts.iter().map(|e| e.scale).max() else {
            return Ok(Ordering::Equal);
        };
        let total = parts
            .iter()
            .map(|e| rescale(e, scale))
            .reduce(|a, b| a.add(&b))
            .expect("nonempty");
        match total.sign() {
            Some(Ordering::Equal) | None => {}
            Some(s) => return Ok(s),
        }
        if exact_cost <= 1 << 22 {
            let mut product = Rational::one();
            for (m, a) in terms {
                product *= super::rational::pow_rat(a, *m);
            }
            return Ok(product.cmp(&Rational::one()));
        }
        if bits >= esc.cap_bits {
            return Err(NumericsError::PrecisionCap { t: None, bits });
        }
        bits = (bits * 2).min(esc.cap_bits);
    }
}

/// Re-expresses an enclosure at a finer dyadic scale (exact).
fn rescale(e: &FixedEnclosure, scale: u32) -> FixedEnclosure {
    if e.scale == scale {
        return e.clone();
    }
    if e.scale < scale {
        let s = (scale - e.scale) as usize;
        FixedEnclosure {
            lo: &e.lo << s,
            hi: &e.hi << s,
            scale,
        }
    } else {
        let s = (e.scale - scale) as usize;
        let d = BigInt::one() << s;
        FixedEnclosure {
            lo: e.lo.div_floor(&d),
            hi: -((-&e.hi).div_floor(&d)),
            scale,
        }
    }
}

pub(crate) fn rescale_to(e: &FixedEnclosure, scale: u32) -> FixedEnclosure {
    rescale(e, scale)
}

/// Lossy view used only for diagnostics.
pub fn approx(e: &Enclosure) -> f64 {
    let mid = (&e.lower + &e.upper) / Rational::from_integer(2.into());
    super::rational::to_f64(&mid)
}
