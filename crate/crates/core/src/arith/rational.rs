//! Arbitrary-precision rationals.
//!
//! `num_rational::BigRational` keeps every value in lowest terms with a
//! positive denominator, so equality and ordering are structural.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `p / q` in lowest terms. Panics on `q == 0`; use [`checked_div`] for
/// runtime values.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn compare(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// `2^-k`.
pub fn pow2_neg(k: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k as usize)
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Smallest multiple of `2^-k` strictly greater than `x`.
pub fn dyadic_above(x: &Rational, k: u32) -> Rational {
    let scale = BigInt::one() << k as usize;
    let scaled = x * Rational::from_integer(scale.clone());
    let next = scaled.floor().to_integer() + BigInt::one();
    Rational::new(next, scale)
}

/// Number of bits needed so that `2^-k <= eps`. `eps` must be positive.
pub fn bits_for(eps: &Rational) -> u32 {
    debug_assert!(eps.is_positive());
    let mut k = 0u32;
    let mut p = Rational::one();
    while &p > eps {
        p /= int(2);
        k += 1;
    }
    k
}

/// Canonical text form: `p/q`, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses `p/q`, `p`, or a finite decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = parse_int(p)?;
        let q: BigInt = parse_int(q)?;
        if q.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let w = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            parse_int(whole)?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("bad decimal {s:?}")));
        }
        let f = parse_int(frac)?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(w.abs() * &scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    Ok(Rational::from_integer(parse_int(s)?))
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("bad integer {s:?}")));
    }
    t.parse::<BigInt>()
        .map_err(|e| Error::parse(format!("bad integer {s:?}: {e}")))
}

/// Integer square root bounds: returns `s` with `s^2 <= n < (s+1)^2`.
pub(crate) fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    num_integer::Roots::sqrt(n)
}

/// Exact square root when `x` is the square of a rational.
pub fn exact_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (p, q) = (x.numer(), x.denom());
    let sp = isqrt(p);
    let sq = isqrt(q);
    (&sp * &sp == *p && &sq * &sq == *q).then(|| Rational::new(sp, sq))
}

pub(crate) fn gcd_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
