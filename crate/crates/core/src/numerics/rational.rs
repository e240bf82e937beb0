//! Helpers around [`BigRational`], the scalar of every exact computation in
//! this crate.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumericsError;

/// Arbitrary-precision signed fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `base^exp` for any integer exponent.
pub fn pow_int(base: u32, exp: i64) -> Rational {
    let magnitude = BigInt::from(base).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(magnitude)
    } else {
        Rational::new(BigInt::one(), magnitude)
    }
}

/// `q^exp` for any integer exponent; `q` must be nonzero when `exp < 0`.
pub fn pow_rat(q: &Rational, exp: i64) -> Rational {
    let n = exp.unsigned_abs() as u32;
    // Powers of a reduced fraction stay reduced.
    let p = Rational::new_raw(q.numer().pow(n), q.denom().pow(n));
    if exp >= 0 {
        p
    } else {
        p.recip()
    }
}

pub fn floor_int(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_int(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Nearest integer, ties broken toward the smaller one.
pub fn round_half_down(q: &Rational) -> BigInt {
    let half = rat(1, 2);
    ceil_int(&(q - half))
}

/// Exact order by cross-multiplication.
///
/// `Ord` on `Ratio` expands continued fractions, which is slow when two
/// large rationals are close. Nested game positions are exactly that case.
pub fn cmp_rat(a: &Rational, b: &Rational) -> Ordering {
    // Denominators are positive after normalization.
    if a.denom() == b.denom() {
        a.numer().cmp(b.numer())
    } else {
        (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
    }
}

pub fn min_rat<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if cmp_rat(a, b) != Ordering::Greater {
        a
    } else {
        b
    }
}

pub fn max_rat<'a>(a: &'a Rational, b: &'a Rational) -> &'a Rational {
    if cmp_rat(a, b) != Ordering::Less {
        a
    } else {
        b
    }
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected so that no input is
/// silently rounded.
pub fn parse_rational(text: &str) -> Result<Rational, NumericsError> {
    let text = text.trim();
    let bad = || NumericsError::Parse(format!("expected a rational \"p/q\", got {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(NumericsError::Parse(format!(
            "zero denominator in {text:?}"
        )));
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Always `"p/q"`, including integers (`"3/1"`). Used by the CSV writer.
pub fn fmt_pq(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Lossy conversion for display and plotting only.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Both parts overflow f64: shift them down together.
        let nb = q.numer().bits() as i64;
        let db = q.denom().bits() as i64;
        let shift = nb.max(db) - 1000;
        let n = (q.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let d = (q.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Serde adapter: a rational is `{"n": "<decimal>", "d": "<decimal>"}`.
pub mod serde_rational {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wire {
        n: String,
        d: String,
    }

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            n: q.numer().to_string(),
            d: q.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let w = Wire::deserialize(d)?;
        let n = BigInt::from_str(&w.n).map_err(D::Error::custom)?;
        let den = BigInt::from_str(&w.d).map_err(D::Error::custom)?;
        if !den.is_positive() {
            return Err(D::Error::custom("denominator must be positive"));
        }
        let q = Rational::new(n.clone(), den.clone());
        if q.numer() != &n || q.denom() != &den {
            return Err(D::Error::custom("rational not in lowest terms"));
        }
        Ok(q)
    }

    /// Wrapper for serializing a bare rational (e.g. inside reports).
    #[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
    pub struct WireRational(#[serde(with = "self")] pub Rational);
}

pub mod serde_rational_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.clone()
            .map(super::serde_rational::WireRational)
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<super::serde_rational::WireRational>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("7/200").unwrap(), rat(7, 200));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn floor_ceil_round() {
        assert_eq!(floor_int(&rat(-1, 3)), BigInt::from(-1));
        assert_eq!(ceil_int(&rat(-1, 3)), BigInt::from(0));
        assert_eq!(ceil_int(&rat(7, 2)), BigInt::from(4));
        assert_eq!(round_half_down(&rat(5, 2)), BigInt::from(2));
        assert_eq!(round_half_down(&rat(-5, 2)), BigInt::from(-3));
        assert_eq!(round_half_down(&rat(8, 3)), BigInt::from(3));
    }

    #[test]
    fn powers() {
        assert_eq!(pow_int(2, -3), rat(1, 8));
        assert_eq!(pow_rat(&rat(-2, 3), 3), rat(-8, 27));
        assert_eq!(pow_rat(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow_rat(&rat(-2, 3), -1), rat(-3, 2));
    }

    #[test]
    fn json_wire_format() {
        let w = serde_rational::WireRational(rat(-3, 8));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"n":"-3","d":"8"}"#);
        let back: serde_rational::WireRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(
            serde_json::from_str::<serde_rational::WireRational>(r#"{"n":"2","d":"4"}"#).is_err()
        );
    }
}
