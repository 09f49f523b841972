use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q` with the denominator always present, e.g. `-896/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q`, an integer, a decimal like `-0.125` or `1.5e-3`, or a
/// dyadic power `2^-b`.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let s = input.trim();
    let err = || Error::Parse {
        what: "rational",
        input: input.to_string(),
    };
    if s.is_empty() {
        return Err(err());
    }
    if let Some(exp) = s.strip_prefix("2^") {
        let e: i64 = exp.parse().map_err(|_| err())?;
        return Ok(pow2(e));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(err());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: BigInt = format!("{whole}{frac}").parse().map_err(|_| err())?;
    let scale = exponent - frac.len() as i64;
    let mut value = Rational::from_integer(all);
    let ten = BigInt::from(10u32);
    let factor = Rational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// `2^e` as an exact rational (negative exponents allowed).
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs() as usize;
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Rounds `q` to the nearest multiple of `2^-bits`, ties to even.
pub fn round_dyadic(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled_num = q.numer() * &scale;
    let den = q.denom();
    let (mut quot, rem) = scaled_num.div_mod_floor(den);
    // rem in [0, den): compare 2*rem with den
    let twice = &rem * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Greater => quot += 1u32,
        std::cmp::Ordering::Equal if quot.is_odd() => quot += 1u32,
        _ => {}
    }
    Rational::new(quot, scale)
}

/// Smallest `b` with `2^-b <= tol`. `tol` must be positive.
pub fn bits_for_tolerance(tol: &Rational) -> u32 {
    debug_assert!(tol.is_positive());
    let mut b = 0u32;
    while pow2(-(b as i64)) > *tol {
        b += 1;
    }
    b
}

/// Natural logarithm of `|q|` for nonzero `q`, accurate well beyond f64
/// range limits (works for numbers with millions of bits).
pub fn ln_abs(q: &Rational) -> f64 {
    ln_abs_int(q.numer()) - ln_abs_int(q.denom())
}

fn ln_abs_int(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (v.abs() >> shift as usize).to_f64().unwrap_or(0.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Best-effort f64 view; used only for human-facing diagnostics.
pub fn approx_f64(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let sign = if q.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
    sign * ln_abs(q).exp()
}

/// Fixed-point decimal rendering with `digits` fractional digits (truncated toward zero).
pub fn to_decimal(q: &Rational, digits: usize) -> String {
    let negative = q.is_negative();
    let a = q.abs();
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let s = scaled.to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (whole, frac) = s.split_at(s.len() - digits);
    let sign = if negative && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

pub mod serde_rational {
    //! `serde(with = ...)` adapter writing rationals as `"p/q"` strings.
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-280").unwrap(), rat_int(-280));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("1.5e-3").unwrap(), rat(3, 2000));
        assert_eq!(parse_rational("2^-64").unwrap(), pow2(-64));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn format_keeps_denominator() {
        assert_eq!(format_rational(&rat_int(-896)), "-896/1");
        assert_eq!(format_rational(&rat(4, -6)), "-2/3");
    }

    #[test]
    fn dyadic_rounding_ties_to_even() {
        // 5/8 at 2 bits: 2.5 quarters -> 2 quarters
        assert_eq!(round_dyadic(&rat(5, 8), 2), rat(1, 2));
        // 7/8 at 2 bits: 3.5 quarters -> 4 quarters
        assert_eq!(round_dyadic(&rat(7, 8), 2), rat_int(1));
        assert_eq!(round_dyadic(&rat(-5, 8), 2), rat(-1, 2));
        assert_eq!(round_dyadic(&rat(1, 3), 4), rat(5, 16));
        assert_eq!(round_dyadic(&rat(3, 4), 2), rat(3, 4));
    }

    #[test]
    fn tolerance_bits() {
        assert_eq!(bits_for_tolerance(&pow2(-64)), 64);
        assert_eq!(bits_for_tolerance(&rat(1, 1000)), 10);
        assert_eq!(bits_for_tolerance(&rat_int(1)), 0);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(1, 8), 3), "0.125");
        assert_eq!(to_decimal(&rat(-2, 3), 4), "-0.6666");
        assert_eq!(to_decimal(&rat_int(12), 0), "12");
    }

    #[test]
    fn log_of_huge_values() {
        let big = Rational::from_integer(BigInt::one() << 5000usize);
        let ln = ln_abs(&big);
        assert!((ln - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
