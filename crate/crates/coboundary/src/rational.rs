//! Exact rational scalars: thin helpers over `num_rational::BigRational`.
//!
//! All quantities in this crate (breakpoints, measures, vector entries,
//! certified bounds) are exact rationals; nothing is ever rounded unless a
//! caller explicitly asks for a decimal rendering.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = num_rational::BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses the canonical `"p/q"` document encoding; a bare integer `"p"` is
/// accepted as `p/1`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical document encoding, always `"p/q"` in lowest terms with `q > 0`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// True when the denominator (in lowest terms) is a power of two.
pub fn is_dyadic(r: &Rational) -> bool {
    let mut d = r.denom().clone();
    while d.is_even() {
        d /= 2;
    }
    d.is_one()
}

use num_integer::Integer as _;

/// 2^k as a rational.
pub fn pow2(k: usize) -> Rational {
    Rational::from_integer(BigInt::one() << k)
}

/// Decimal rendering with `digits` significant digits, computed by exact long
/// division (round half away from zero). Deterministic across platforms.
pub fn decimal_approx(r: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Find exponent e with 10^e <= a < 10^(e+1).
    let ten = rat_int(10);
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < Rational::one() {
        scaled *= &ten;
        e -= 1;
    }
    // mantissa = round(a * 10^(digits-1-e)), an integer with `digits` digits.
    let shift = digits as i64 - 1 - e;
    let mut m = a;
    if shift >= 0 {
        for _ in 0..shift {
            m *= &ten;
        }
    } else {
        for _ in 0..(-shift) {
            m /= &ten;
        }
    }
    let half = rat(1, 2);
    let mut mantissa = (m + half).floor().to_integer();
    // Rounding can carry into one extra digit (e.g. 999.95 -> 1000).
    let limit = BigInt::from(10u8).pow(digits as u32);
    let mut exp = e;
    if mantissa >= limit {
        mantissa /= 10;
        exp += 1;
    }
    let digits_str = mantissa.to_string();
    let sign = if neg { "-" } else { "" };
    let body = if exp >= 0 && (exp as usize) < digits {
        let (int_part, frac_part) = digits_str.split_at(exp as usize + 1);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        }
    } else if (0..15).contains(&exp) {
        let zeros = "0".repeat(exp as usize + 1 - digits);
        format!("{digits_str}{zeros}")
    } else if (-4..0).contains(&exp) {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = format!("{zeros}{digits_str}");
        let frac = frac.trim_end_matches('0');
        format!("0.{frac}")
    } else {
        let (head, tail) = digits_str.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{exp}")
        } else {
            format!("{head}.{tail}e{exp}")
        }
    };
    format!("{sign}{body}")
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
